//! Certificates transcribed from typeset listings that carry transcription
//! damage. Each must be rejected, and the rejection must name the damage.

mod common;

use common::noisy_file;
use pentgeom::certify::{develop_lenient, parse_certificate, parse_certificate_report, CertError};
use pentgeom::pent::verify_pent;

fn text(name: &str) -> String {
    std::fs::read_to_string(noisy_file(name)).unwrap()
}

fn failing_checks(name: &str) -> Vec<(String, String)> {
    let c = parse_certificate(&text(name)).unwrap();
    assert_eq!(c.v() % c.d, 0, "{name}");
    let g = develop_lenient(&c).unwrap();
    let report = verify_pent(&g);
    assert!(!report.overall, "{name} should fail");
    report.failures().map(|c| (c.name.clone(), c.detail.clone())).collect()
}

#[test]
fn merged_base_block_is_a_block_size_error() {
    let err = parse_certificate(&text("pent_3_170_13.cert")).unwrap_err();
    match err {
        CertError::BlockSizeMismatch { index, block, size, k } => {
            assert_eq!((index, size, k), (76, 5, 3));
            assert_eq!(block, "223, 247, 313, 247, 268, 341");
        }
        e => panic!("unexpected {e}"),
    }
    let (cert, errors) = parse_certificate_report(&text("pent_3_170_13.cert"));
    assert_eq!(cert.unwrap().base_blocks.len(), 340);
    assert_eq!(errors.len(), 1);
}

#[test]
fn doubled_pairs_are_located() {
    let cases = [
        ("pent_3_41_7.cert", "pair 1,40 lies on 2 lines", "point 1 is on 40 lines"),
        ("pent_3_171_13.cert", "pair 0,179 lies on 2 lines", "point 1 is on 168 lines"),
        ("pent_3_173_13.cert", "pair 4,229 lies on 2 lines", "point 13 is on 174 lines"),
    ];
    for (name, pair, degree) in cases {
        let failures = failing_checks(name);
        let names: Vec<&str> = failures.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["constant replication", "pairs on at most one line"], "{name}");
        assert!(failures[0].1.starts_with(degree), "{name}: {}", failures[0].1);
        assert_eq!(failures[1].1, pair, "{name}");
    }
}
