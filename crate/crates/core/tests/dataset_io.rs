//! Dataset files and correlation bookkeeping.

use ebbi_core::dataset::*;
use ebbi_core::Error;

#[test]
fn csv_file_round_trip() {
    let d = DichotomicDataset::new(3, vec![vec![1, -1, 1], vec![-1, -1, 1], vec![1, 1, 1]]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triples.csv");
    d.write_csv(std::fs::File::create(&path).unwrap()).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("s1,s2,s3\n+1,-1,+1\n"));
    let back = DichotomicDataset::read_csv(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(back.rows(), d.rows());
}

#[test]
fn bad_files_are_rejected() {
    assert!(DichotomicDataset::read_csv("s1,s2\n1,0\n".as_bytes()).is_err());
    assert!(DichotomicDataset::read_csv("s1,s2\n".as_bytes()).is_err());
    assert!(DichotomicDataset::read_csv("s1,s2\n1,1,1\n".as_bytes()).is_err());
}

#[test]
fn correlation_carries_integer_sum() {
    let d = DichotomicDataset::new(2, vec![vec![1, 1], vec![1, -1], vec![-1, -1], vec![1, 1]]).unwrap();
    let c = d.correlation(1, 2).unwrap();
    assert_eq!((c.sum, c.m, c.value), (2, 4, 0.5));
    assert!(matches!(d.correlation(1, 3), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn checker_examples() {
    assert!(check_boole_triple(1.0, 1.0, 1.0).unwrap().all_satisfied);
    assert!(!check_boole_triple(-1.0, -1.0, -1.0).unwrap().all_satisfied);
    let r = check_chsh(1.0, -1.0, 1.0, 1.0).unwrap();
    assert_eq!(r.clauses.len(), 4);
    assert!(!r.all_satisfied);
    assert!(check_pair_bound(-1.0, -1.0, -1.0).unwrap().all_satisfied);
    assert!(check_boole_triple(1.5, 0.0, 0.0).is_err());
}
