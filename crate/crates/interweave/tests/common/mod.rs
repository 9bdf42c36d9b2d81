#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Output, Stdio};

use interweave::BitMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn mat(rows: &[u64]) -> BitMatrix {
    BitMatrix::new(rows.to_vec()).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> BitMatrix {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows = (0..n).map(|_| rng.gen_range(0..=mask)).collect();
    BitMatrix::new(rows).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> BitMatrix {
    let mut cols: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        cols.swap(i, rng.gen_range(0..=i));
    }
    let rows = cols.iter().map(|&c| 1u64 << (n - 1 - c)).collect();
    BitMatrix::new(rows).unwrap()
}

/// Integer matrix product, kept as entry counts so callers can check the
/// result never leaves {0, 1} before comparing with the boolean product.
pub fn integer_product(a: &BitMatrix, b: &BitMatrix) -> Vec<Vec<u32>> {
    let n = a.order();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| u32::from(a.get(i, k) && b.get(k, j)))
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn from_entries(entries: &[Vec<u32>]) -> BitMatrix {
    let rows = entries
        .iter()
        .map(|row| {
            row.iter()
                .fold(0u64, |acc, &e| acc << 1 | u64::from(e != 0))
        })
        .collect();
    BitMatrix::new(rows).unwrap()
}

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_interweave")
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("spawn interweave")
}

pub fn run_cli_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(binary())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn interweave");
    // a child rejecting its arguments may exit before reading stdin
    if let Err(e) = child.stdin.take().unwrap().write_all(input.as_bytes()) {
        assert_eq!(e.kind(), std::io::ErrorKind::BrokenPipe, "stdin write");
    }
    child.wait_with_output().expect("wait for interweave")
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

pub fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}
