//! Small named parity-check matrices used by tests, the CLI and the demo.

use crate::code_model::ParityCheckMatrix;

fn build(n: usize, rows: &[&[usize]]) -> ParityCheckMatrix {
    ParityCheckMatrix::from_row_supports(n, rows.iter().map(|r| r.iter().map(|&i| i - 1).collect()).collect())
        .expect("catalog matrices are valid")
}

/// The 3x3 matrix [110; 111; 011]. Its code is {000} but its polytope is a segment.
pub fn trivial3() -> ParityCheckMatrix {
    build(3, &[&[1, 2], &[1, 2, 3], &[2, 3]])
}

/// The [4,2,2] code with H = [1110; 0111].
pub fn code_4_2() -> ParityCheckMatrix {
    build(4, &[&[1, 2, 3], &[2, 3, 4]])
}

/// The [7,2,3] "dumbbell" code: two triangles joined through bit 4.
pub fn dumbbell() -> ParityCheckMatrix {
    build(7, &[&[1, 2], &[1, 3], &[2, 3, 4], &[4, 5, 7], &[5, 6], &[6, 7]])
}

/// A length-4 code with two degree-2 checks and two degree-3 checks.
/// Its cone has the two extreme rays (2,2,1,1) and (1,1,2,2).
pub fn two_check() -> ParityCheckMatrix {
    build(4, &[&[1, 2], &[3, 4], &[1, 3, 4], &[1, 2, 3]])
}

/// The [7,4,3] Hamming code with columns ordered so that bit 7 is in every check.
pub fn hamming7() -> ParityCheckMatrix {
    build(7, &[&[1, 4, 6, 7], &[2, 4, 5, 7], &[3, 5, 6, 7]])
}

/// Looks up a catalog matrix by name.
pub fn by_name(name: &str) -> Option<ParityCheckMatrix> {
    Some(match name {
        "trivial3" => trivial3(),
        "code_4_2" => code_4_2(),
        "dumbbell" => dumbbell(),
        "two_check" => two_check(),
        "hamming7" => hamming7(),
        _ => return None,
    })
}

pub const NAMES: [&str; 5] = ["trivial3", "code_4_2", "dumbbell", "two_check", "hamming7"];
