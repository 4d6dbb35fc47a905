//! Fixed reference data for the SO5 verification command: the three
//! skew-symmetric Cartan representatives, the two rational conjugators, the
//! three displayed adjoint images, and the expected characteristic polynomial.
//! Everything lives here so the verification logic contains no inline
//! constants.

/// Cartan coordinates (a, b) of the three elements; the third carries √6.
pub const S_COORDS_RATIONAL: [[i64; 2]; 2] = [[3, 6], [9, 18]];
pub const S3_COORDS_SQRT6: [i64; 2] = [-8, -4];

/// 5×5 matrices of the s_i in the identity-form realization of so5
/// (skew-symmetric matrices). The √6 factor of s3 is carried separately.
pub const S1: [[i64; 5]; 5] = [
    [0, 3, 0, 0, 0],
    [-3, 0, 0, 0, 0],
    [0, 0, 0, 6, 0],
    [0, 0, -6, 0, 0],
    [0, 0, 0, 0, 0],
];

pub const S2: [[i64; 5]; 5] = [
    [0, 9, 0, 0, 0],
    [-9, 0, 0, 0, 0],
    [0, 0, 0, 18, 0],
    [0, 0, -18, 0, 0],
    [0, 0, 0, 0, 0],
];

/// √6-coefficients of s3: the matrix is S3_SQRT6 · √6.
pub const S3_SQRT6: [[i64; 5]; 5] = [
    [0, -8, 0, 0, 0],
    [8, 0, 0, 0, 0],
    [0, 0, 0, -4, 0],
    [0, 0, 4, 0, 0],
    [0, 0, 0, 0, 0],
];

/// Conjugators in SO5 (identity form), entries times 3.
pub const G1_TIMES_3: [[i64; 5]; 5] = [
    [3, 0, 0, 0, 0],
    [0, 1, 2, 2, 0],
    [0, 2, -2, 1, 0],
    [0, 2, 1, -2, 0],
    [0, 0, 0, 0, 3],
];

pub const G2_TIMES_3: [[i64; 5]; 5] = [
    [1, 0, 2, 2, 0],
    [0, 3, 0, 0, 0],
    [2, 0, -2, 1, 0],
    [2, 0, 1, -2, 0],
    [0, 0, 0, 0, 3],
];

/// The three displayed adjoint images (integer matrices summing to zero).
pub const AD1: [[i64; 5]; 5] = [
    [0, 1, 2, 2, 0],
    [-1, 0, 4, -4, 0],
    [-2, -4, 0, 2, 0],
    [-2, 4, -2, 0, 0],
    [0, 0, 0, 0, 0],
];

pub const AD2: [[i64; 5]; 5] = [
    [0, 3, 12, -12, 0],
    [-3, 0, -6, -6, 0],
    [-12, 6, 0, 6, 0],
    [12, 6, -6, 0, 0],
    [0, 0, 0, 0, 0],
];

pub const AD3: [[i64; 5]; 5] = [
    [0, -4, -14, 10, 0],
    [4, 0, 2, 10, 0],
    [14, -2, 0, -8, 0],
    [-10, -10, 8, 0, 0],
    [0, 0, 0, 0, 0],
];

/// Coefficients (low to high) of λ(λ²+384)(λ²+96) = λ⁵ + 480λ³ + 36864λ.
pub const AD3_CHARPOLY: [i64; 6] = [0, 36864, 0, 480, 0, 1];

/// The stabilizing torus element.
pub const T_WITNESS: [i64; 5] = [-1, -1, -1, -1, 1];

/// Multiplicative torus coordinates of the witness in the ε-realization.
pub const T_WITNESS_TORUS_SIGNS: [i64; 2] = [-1, -1];
