//! Naive reference implementations on unpacked 0/1 arrays. Nothing here uses
//! the packed routines it is compared against.

#![allow(dead_code)]

use rand::Rng;
use tetra_core::gf2::Mat3;

pub type Dense3 = [[u8; 3]; 3];
pub type Dense6 = [[u8; 6]; 6];

pub fn mul6(a: &Dense6, b: &Dense6) -> Dense6 {
    let mut c = [[0u8; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let mut s = 0;
            for k in 0..6 {
                s += a[i][k] * b[k][j];
            }
            c[i][j] = s % 2;
        }
    }
    c
}

pub fn mul3(a: &Dense3, b: &Dense3) -> Dense3 {
    let mut c = [[0u8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u8>() % 2;
        }
    }
    c
}

/// Places `r` at one-based rows/columns `slot` of the 6×6 identity.
pub fn embed(r: &Dense3, slot: [usize; 3]) -> Dense6 {
    let mut e = [[0u8; 6]; 6];
    for (i, row) in e.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &p in &slot {
        e[p - 1][p - 1] = 0;
    }
    for a in 0..3 {
        for b in 0..3 {
            e[slot[a] - 1][slot[b] - 1] = r[a][b];
        }
    }
    e
}

pub fn ds_check(r1: &Dense3, r2: &Dense3, r3: &Dense3, r4l: &Dense3, r4r: &Dense3) -> bool {
    let e1 = embed(r1, [1, 2, 3]);
    let e2 = embed(r2, [1, 4, 5]);
    let e3 = embed(r3, [2, 4, 6]);
    let lhs = mul6(&mul6(&mul6(&e1, &e2), &e3), &embed(r4l, [3, 5, 6]));
    let rhs = mul6(&mul6(&mul6(&embed(r4r, [3, 5, 6]), &e3), &e2), &e1);
    lhs == rhs
}

pub fn dense(m: Mat3) -> Dense3 {
    m.to_rows()
}

/// Row vector (coordinate 1 first) times matrix, over 𝔽₂.
pub fn vec_mul<const N: usize>(x: &[u8; N], m: &[[u8; N]; N]) -> [u8; N] {
    let mut y = [0u8; N];
    for (j, yj) in y.iter_mut().enumerate() {
        *yj = (0..N).map(|i| x[i] * m[i][j]).sum::<u8>() % 2;
    }
    y
}

pub fn state_of<const N: usize>(x: &[u8; N]) -> usize {
    x.iter().fold(0, |acc, &b| acc * 2 + b as usize)
}

pub fn coords<const N: usize>(s: usize) -> [u8; N] {
    let mut x = [0u8; N];
    for (i, xi) in x.iter_mut().enumerate() {
        *xi = (s >> (N - 1 - i) & 1) as u8;
    }
    x
}

/// `map[x] = x·m` over all 2^N states.
pub fn perm_of<const N: usize>(m: &[[u8; N]; N]) -> Vec<usize> {
    (0..1usize << N)
        .map(|s| state_of(&vec_mul(&coords::<N>(s), m)))
        .collect()
}

pub fn random_dense6(rng: &mut impl Rng) -> Dense6 {
    let mut m = [[0u8; 6]; 6];
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = rng.gen_range(0..2);
        }
    }
    m
}

pub fn m(s: &str) -> Mat3 {
    s.parse().unwrap()
}
