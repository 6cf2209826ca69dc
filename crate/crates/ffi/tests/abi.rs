//! Exercises the C ABI surface through raw pointers.

use std::ffi::CStr;
use std::ptr;

use wham_ffi::*;

const LENGTHS: [u32; 2] = [4, 4];
const SCALINGS: [u64; 2] = [1, 2];

const GENERATOR: [u32; 32] = [
    1, 0, 0, 0, 0, 1, 1, 1, //
    0, 1, 0, 0, 1, 0, 1, 1, //
    0, 0, 1, 0, 1, 1, 0, 1, //
    0, 0, 0, 1, 1, 1, 1, 0,
];

unsafe fn example1() -> *mut WhamCode {
    let mut code: *mut WhamCode = ptr::null_mut();
    let status = wham_code_from_generator(
        2,
        LENGTHS.as_ptr(),
        SCALINGS.as_ptr(),
        2,
        4,
        GENERATOR.as_ptr(),
        &mut code,
    );
    assert_eq!(status, WhamStatus::Ok);
    assert!(!code.is_null());
    code
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(wham_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn code_lifecycle_and_parameters() {
    unsafe {
        let code = example1();
        assert_eq!(wham_code_length(code), 8);
        assert_eq!(wham_code_dimension(code), 4);
        assert_eq!(wham_code_alphabet(code), 2);
        let mut d = 0u64;
        assert_eq!(wham_code_min_distance(code, 0, &mut d), WhamStatus::Ok);
        assert_eq!(d, 5);
        let mut tau = 0u64;
        assert_eq!(wham_code_tau(code, &mut tau), WhamStatus::Ok);
        assert_eq!(tau, 2);
        wham_code_free(code);
        wham_code_free(ptr::null_mut());
    }
}

#[test]
fn composite_modulus_is_reported_with_a_message() {
    unsafe {
        let mut code: *mut WhamCode = ptr::null_mut();
        let status = wham_code_from_generator(
            6,
            LENGTHS.as_ptr(),
            SCALINGS.as_ptr(),
            2,
            4,
            GENERATOR.as_ptr(),
            &mut code,
        );
        assert_eq!(status, WhamStatus::CompositeModulus);
        assert!(code.is_null());
        assert!(last_error().starts_with("CompositeModulus"), "{}", last_error());
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut code: *mut WhamCode = ptr::null_mut();
        let status = wham_code_from_generator(
            2,
            ptr::null(),
            SCALINGS.as_ptr(),
            2,
            4,
            GENERATOR.as_ptr(),
            &mut code,
        );
        assert_eq!(status, WhamStatus::NullArgument);
        let mut d = 0u64;
        assert_eq!(
            wham_code_min_distance(ptr::null(), 0, &mut d),
            WhamStatus::NullArgument
        );
        assert_eq!(wham_code_length(ptr::null()), 0);
    }
}

#[test]
fn ball_and_bounds_match_the_figure() {
    let lengths = [7u32, 7];
    let scalings = [1u64, 2];
    unsafe {
        let mut size = 0u64;
        let status =
            wham_ball_size(2, lengths.as_ptr(), scalings.as_ptr(), 2, 2, &mut size);
        assert_eq!(status, WhamStatus::Ok);
        assert_eq!(size, 36);

        let mut bounds = WhamBounds {
            singleton: 0,
            hamming: 0,
            gv: 0,
            has_plotkin: false,
            plotkin: 0,
            lp: 0,
        };
        let status =
            wham_bounds(2, lengths.as_ptr(), scalings.as_ptr(), 2, 5, &mut bounds);
        assert_eq!(status, WhamStatus::Ok);
        assert_eq!(
            (bounds.singleton, bounds.hamming, bounds.gv, bounds.lp),
            (10, 8, 6, 8)
        );
        assert!(!bounds.has_plotkin);

        let status =
            wham_bounds(2, lengths.as_ptr(), scalings.as_ptr(), 2, 12, &mut bounds);
        assert_eq!(status, WhamStatus::Ok);
        assert!(bounds.has_plotkin);
        assert_eq!(bounds.plotkin, 3);
    }
}

#[test]
fn weight_respects_the_scalings() {
    unsafe {
        let v = [1u32, 0, 0, 0, 1, 0, 0, 0];
        let mut w = 0u64;
        let status = wham_weight(
            LENGTHS.as_ptr(),
            SCALINGS.as_ptr(),
            2,
            v.as_ptr(),
            8,
            &mut w,
        );
        assert_eq!(status, WhamStatus::Ok);
        assert_eq!(w, 3);
    }
}

#[test]
fn construction_round_trip_and_decode_failure() {
    unsafe {
        let mut cc: *mut WhamConstruction = ptr::null_mut();
        assert_eq!(wham_construct(2, 0, 7, 7, &mut cc), WhamStatus::Ok);
        assert_eq!(wham_construction_length(cc), 14);
        assert_eq!(wham_construction_dimension(cc), 8);

        let msg = [1u32, 0, 1, 1, 0, 0, 1, 0];
        let mut codeword = [0u32; 14];
        assert_eq!(
            wham_construction_encode(cc, msg.as_ptr(), 8, codeword.as_mut_ptr(), 14),
            WhamStatus::Ok
        );

        let mut received = codeword;
        received[1] ^= 1;
        received[4] ^= 1;
        let mut decoded = [0u32; 14];
        assert_eq!(
            wham_construction_decode(cc, received.as_ptr(), 14, decoded.as_mut_ptr(), 14),
            WhamStatus::Ok
        );
        assert_eq!(decoded, codeword);

        // Hunt for a pattern both syndrome tables reject.
        let mut found_failure = false;
        'search: for i in 0..7usize {
            for j in i + 1..7 {
                for k in j + 1..7 {
                    let mut word = [0u32; 14];
                    word[i] = 1;
                    word[j] = 1;
                    word[k] = 1;
                    let status = wham_construction_decode(
                        cc,
                        word.as_ptr(),
                        14,
                        decoded.as_mut_ptr(),
                        14,
                    );
                    if status == WhamStatus::DecodeFailure {
                        found_failure = true;
                        break 'search;
                    }
                    assert_eq!(status, WhamStatus::Ok);
                }
            }
        }
        assert!(found_failure, "no triple flip hit the failure path");

        wham_construction_free(cc);

        let mut bad: *mut WhamConstruction = ptr::null_mut();
        assert_eq!(
            wham_construct(7, 1, 4, 3, &mut bad),
            WhamStatus::InvalidParameter
        );
    }
}

#[test]
fn simulate_fills_stats_and_block_rates() {
    unsafe {
        let code = example1();
        let rhos = [0.125f64, 0.02];
        let mut stats = WhamSimulationStats {
            trials: 0,
            word_errors: 0,
            decode_failures: 0,
            empirical_wer: 0.0,
            seed: 0,
        };
        let mut rates = [0.0f64; 2];
        let status = wham_simulate(
            code,
            rhos.as_ptr(),
            2,
            2,
            500,
            42,
            &mut stats,
            rates.as_mut_ptr(),
            2,
        );
        assert_eq!(status, WhamStatus::Ok);
        assert_eq!(stats.trials, 500);
        assert_eq!(stats.seed, 42);
        assert!(stats.empirical_wer >= 0.0 && stats.empirical_wer <= 1.0);
        assert!(rates[0] > 0.0, "block 1 saw no flips in 500 trials");

        // Wrong crossover count surfaces as a length mismatch.
        let status = wham_simulate(
            code,
            rhos.as_ptr(),
            1,
            2,
            10,
            42,
            &mut stats,
            rates.as_mut_ptr(),
            2,
        );
        assert_eq!(status, WhamStatus::LengthMismatch);
        wham_code_free(code);
    }
}

#[test]
fn generated_header_declares_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/wham.h"
    ))
    .expect("build.rs wrote include/wham.h");
    for needle in [
        "#ifndef WHAM_H",
        "typedef struct WhamCode WhamCode;",
        "typedef struct WhamConstruction WhamConstruction;",
        "wham_code_from_generator",
        "wham_construction_decode",
        "wham_last_error_message",
        "WhamStatus_DecodeFailure",
    ] {
        assert!(header.contains(needle), "header lacks {needle:?}");
    }
}
