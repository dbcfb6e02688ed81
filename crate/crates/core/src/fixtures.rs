//! The eight worked examples, entered exactly as published.

use crate::gf2::Mat3;

/// A six-tuple `(R¹, R², R³, R⁴, S³, S⁴)` with the published generic vertex
/// counts of `αR³ + βS³` and `λR⁴ + μS⁴`.
#[derive(Clone, Copy, Debug)]
pub struct SixTupleExample {
    pub number: u32,
    pub r1: Mat3,
    pub r2: Mat3,
    pub r3: Mat3,
    pub r4: Mat3,
    pub s3: Mat3,
    pub s4: Mat3,
    pub vertex_counts: (usize, usize),
}

/// A triple `(R¹, R², R³)` with its published `(R⁴, Q⁴)` pairs, in the order
/// and orientation they were printed.
#[derive(Clone, Debug)]
pub struct ModifiedExample {
    pub number: u32,
    pub r1: Mat3,
    pub r2: Mat3,
    pub r3: Mat3,
    pub pairs: Vec<(Mat3, Mat3)>,
}

fn m(s: &str) -> Mat3 {
    s.parse().expect("fixture matrix")
}

pub fn sixtuple_examples() -> [SixTupleExample; 4] {
    [
        // Example 1
        SixTupleExample {
            number: 1,
            r1: m("100/010/011"),
            r2: m("100/011/001"),
            r3: m("011/001/110"),
            r4: m("101/010/011"),
            s3: m("100/010/001"),
            s4: m("111/010/011"),
            vertex_counts: (14, 12),
        },
        // Example 2
        SixTupleExample {
            number: 2,
            r1: m("101/011/001"),
            r2: m("100/010/011"),
            r3: m("110/111/100"),
            r4: m("100/011/101"),
            s3: m("001/111/100"),
            s4: m("100/111/101"),
            vertex_counts: (12, 12),
        },
        // Example 3
        SixTupleExample {
            number: 3,
            r1: m("100/011/001"),
            r2: m("100/010/101"),
            r3: m("011/111/110"),
            r4: m("100/010/101"),
            s3: m("100/111/110"),
            s4: m("100/110/101"),
            vertex_counts: (12, 12),
        },
        // Example 4
        SixTupleExample {
            number: 4,
            r1: m("100/010/101"),
            r2: m("100/010/101"),
            r3: m("010/100/001"),
            r4: m("010/011/111"),
            s3: m("110/010/001"),
            s4: m("011/101/111"),
            vertex_counts: (14, 14),
        },
    ]
}

pub fn modified_examples() -> [ModifiedExample; 4] {
    [
        // Example 5: one pair
        ModifiedExample {
            number: 5,
            r1: m("101/100/111"),
            r2: m("100/011/001"),
            r3: m("100/010/111"),
            pairs: vec![(m("100/010/101"), m("100/010/111"))],
        },
        // Example 6: two pairs
        ModifiedExample {
            number: 6,
            r1: m("100/010/101"),
            r2: m("101/111/001"),
            r3: m("101/110/001"),
            pairs: vec![
                (m("100/010/001"), m("110/010/001")),
                (m("101/010/001"), m("111/010/001")),
            ],
        },
        // Example 7: two pairs
        ModifiedExample {
            number: 7,
            r1: m("100/010/101"),
            r2: m("101/010/001"),
            r3: m("100/010/101"),
            pairs: vec![
                (m("100/010/001"), m("110/010/001")),
                (m("110/010/011"), m("100/010/011")),
            ],
        },
        // Example 8: four pairs
        ModifiedExample {
            number: 8,
            r1: m("100/010/101"),
            r2: m("101/010/001"),
            r3: m("010/100/001"),
            pairs: vec![
                (m("100/010/001"), m("110/010/001")),
                (m("110/010/011"), m("100/010/011")),
                (m("101/010/001"), m("111/010/001")),
                (m("101/010/011"), m("111/010/011")),
            ],
        },
    ]
}

pub enum Example {
    SixTuple(SixTupleExample),
    Modified(ModifiedExample),
}

/// Example `n` for `n` in `1..=8`.
pub fn example(n: u32) -> Option<Example> {
    match n {
        1..=4 => Some(Example::SixTuple(sixtuple_examples()[n as usize - 1])),
        5..=8 => Some(Example::Modified(modified_examples()[n as usize - 5].clone())),
        _ => None,
    }
}
