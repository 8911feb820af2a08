//! Small explicit families of squares: all Latin squares of a small order and
//! complete sets of orthogonal Latin squares from finite fields.

use crate::square::Square;

/// Every Latin square of order `n`, in lexicographic order of cells.
/// There are 1, 2, 12, 576, 161280 of them for `n = 1..=5`.
pub fn latin_squares(n: usize) -> Vec<Square> {
    assert!((1..=5).contains(&n), "exhaustive listing only up to order 5");
    let mut out = Vec::new();
    let mut cells = vec![0u8; n * n];
    let mut row_used = vec![0u16; n];
    let mut col_used = vec![0u16; n];
    fill(n, 0, &mut cells, &mut row_used, &mut col_used, &mut out);
    out
}

fn fill(n: usize, pos: usize, cells: &mut [u8], row_used: &mut [u16], col_used: &mut [u16], out: &mut Vec<Square>) {
    if pos == n * n {
        out.push(Square::from_cells(n, cells.to_vec()).expect("valid cells"));
        return;
    }
    let (i, j) = (pos / n, pos % n);
    for s in 0..n {
        let bit = 1u16 << s;
        if row_used[i] & bit != 0 || col_used[j] & bit != 0 {
            continue;
        }
        cells[pos] = s as u8;
        row_used[i] |= bit;
        col_used[j] |= bit;
        fill(n, pos + 1, cells, row_used, col_used, out);
        row_used[i] &= !bit;
        col_used[j] &= !bit;
    }
}

/// Multiplication in GF(4) with elements `0..4` as polynomials over GF(2)
/// modulo `x² + x + 1`; addition is XOR.
pub fn gf4_mul(a: usize, b: usize) -> usize {
    let mut r = 0;
    for bit in 0..2 {
        if b >> bit & 1 == 1 {
            r ^= a << bit;
        }
    }
    if r & 4 != 0 {
        r ^= 0b111;
    }
    r
}

/// The three mutually orthogonal Latin squares `L_m[i, j] = m·i + j` over GF(4), `m = 1, 2, 3`.
pub fn gf4_mols() -> [Square; 3] {
    [1, 2, 3].map(|m| Square::from_fn(4, |i, j| gf4_mul(m, i) ^ j))
}

/// The `p - 1` squares `L_m[i, j] = (m·i + j) mod p` for prime `p`.
pub fn prime_mols(p: usize) -> Vec<Square> {
    assert!(p >= 2 && (2..p).all(|d| !p.is_multiple_of(d)), "{p} is not prime");
    (1..p).map(|m| Square::from_fn(p, |i, j| (m * i + j) % p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=4).map(|n| latin_squares(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 12, 576]);
        assert!(latin_squares(4).iter().all(Square::is_latin));
    }

    #[test]
    fn gf4_is_a_field() {
        for a in 1..4 {
            assert_eq!((1..4).filter(|&b| gf4_mul(a, b) == 1).count(), 1);
        }
        assert_eq!(gf4_mul(2, 2), 3);
        assert_eq!(gf4_mul(2, 3), 1);
    }

    #[test]
    fn mols_are_mutually_orthogonal() {
        let m = gf4_mols();
        for a in 0..3 {
            assert!(m[a].is_latin());
            for b in a + 1..3 {
                assert!(m[a].is_orthogonal(&m[b]).unwrap());
            }
        }
        let p5 = prime_mols(5);
        assert_eq!(p5.len(), 4);
        assert!(p5[0].is_orthogonal(&p5[3]).unwrap());
    }
}
