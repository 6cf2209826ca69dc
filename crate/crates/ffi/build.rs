//! Generates include/wham.h from the extern "C" surface.

use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");

    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("WHAM_H".into()),
        cpp_compat: true,
        documentation: true,
        header: Some(
            "/* C interface to the wham weighted-Hamming metric toolkit.\n * Generated; do not edit by hand. */"
                .into(),
        ),
        enumeration: cbindgen::EnumConfig {
            prefix_with_name: true,
            ..Default::default()
        },
        export: cbindgen::ExportConfig {
            include: vec![
                "WhamDistanceMethod".into(),
                "WhamFamily".into(),
                "WhamDecoder".into(),
            ],
            ..Default::default()
        },
        ..Default::default()
    };

    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation succeeds")
        .write_to_file(crate_dir.join("include").join("wham.h"));
}
