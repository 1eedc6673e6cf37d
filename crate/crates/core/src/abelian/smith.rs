//! Smith normal form over the integers and the lattice routines built on it.
//!
//! The reduction pivots on the entry of least absolute value in the active
//! block, clears its row and column by Euclidean steps and repairs the
//! divisibility chain by folding offending rows into the pivot row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₁, …, d_min(rows, cols)`, trailing zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Which transforms to accumulate during the reduction.
#[derive(Clone, Copy, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

pub(crate) struct SmithWork {
    pub d: IntMatrix,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub rank: usize,
}

impl SmithWork {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-k);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn row_negate(&mut self, a: usize) {
        self.d.negate_row(a);
        if let Some(u) = &mut self.u {
            u.negate_row(a);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(a);
        }
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn diag(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub(crate) fn smith_reduce(m: &IntMatrix, track: Track) -> SmithWork {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = SmithWork {
        d: m.clone(),
        u: track.u.then(|| IntMatrix::identity(rows)),
        u_inv: track.u_inv.then(|| IntMatrix::identity(rows)),
        v: track.v.then(|| IntMatrix::identity(cols)),
        rank: 0,
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // least nonzero |entry| in the active block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        loop {
            let mut residue = false;
            for i in t + 1..rows {
                if w.d[(i, t)].is_zero() {
                    continue;
                }
                let q = w.d[(i, t)].div_floor(&w.d[(t, t)]);
                w.row_add(i, t, &-q);
                residue |= !w.d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if w.d[(t, j)].is_zero() {
                    continue;
                }
                let q = w.d[(t, j)].div_floor(&w.d[(t, t)]);
                w.col_add(j, t, &-q);
                residue |= !w.d[(t, j)].is_zero();
            }
            if residue {
                // move the smallest remainder in row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = &w.d[(i, t)];
                    if !x.is_zero() && x.abs() < w.d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = &w.d[(t, j)];
                    if !x.is_zero() && x.abs() < w.d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    w.row_swap(t, best.0);
                } else if best.1 != t {
                    w.col_swap(t, best.1);
                }
                continue;
            }

            let pivot = w.d[(t, t)].clone();
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.d[(i, j)].is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.row_negate(t);
        }
        t += 1;
    }
    w.rank = t;
    w
}

/// Full Smith decomposition `U · M · V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let w = smith_reduce(
        m,
        Track {
            u: true,
            u_inv: false,
            v: true,
        },
    );
    SmithForm {
        u: w.u.expect("tracked"),
        d: w.d,
        v: w.v.expect("tracked"),
    }
}

/// Diagonal of the Smith form only (no transforms accumulated).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_reduce(m, Track::default()).diag()
}

/// A basis of `{x ∈ ℤ^cols : M x = 0}`, returned as column vectors.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let w = smith_reduce(
        m,
        Track {
            v: true,
            ..Track::default()
        },
    );
    let v = w.v.expect("tracked");
    (w.rank..m.cols()).map(|j| v.column(j)).collect()
}

/// Some integer solution of `A x = b`, or `None` when the system has no
/// integer solution. Free coordinates of the Smith basis are set to zero, so
/// the answer is deterministic.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let w = smith_reduce(
        a,
        Track {
            u: true,
            u_inv: false,
            v: true,
        },
    );
    let ub = w.u.as_ref().expect("tracked").mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < w.rank {
            let d = &w.d[(i, i)];
            if !c.is_multiple_of(d) {
                return None;
            }
            y[i] = c / d;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(w.v.expect("tracked").mul_vec(&y))
}

/// Basis of the sublattice of `ℤ^n` spanned by the given vectors, together
/// with a coordinate function for vectors inside the span.
pub(crate) struct SpanBasis {
    /// Basis vectors as columns (`n × rank`).
    pub basis: Vec<Vec<BigInt>>,
    u: IntMatrix,
    diag: Vec<BigInt>,
}

impl SpanBasis {
    pub fn new(n: usize, generators: &[Vec<BigInt>]) -> Self {
        let g = IntMatrix::from_columns(n, generators);
        let w = smith_reduce(
            &g,
            Track {
                u: true,
                u_inv: true,
                v: false,
            },
        );
        let u_inv = w.u_inv.expect("tracked");
        let diag: Vec<BigInt> = (0..w.rank).map(|i| w.d[(i, i)].clone()).collect();
        let basis = diag
            .iter()
            .enumerate()
            .map(|(i, d)| u_inv.column(i).into_iter().map(|x| x * d).collect())
            .collect();
        Self {
            basis,
            u: w.u.expect("tracked"),
            diag,
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Coordinates of `y` in the basis; `None` if `y` is not in the span.
    pub fn coordinates(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let uy = self.u.mul_vec(y);
        let mut out = Vec::with_capacity(self.rank());
        for (i, c) in uy.iter().enumerate() {
            if i < self.rank() {
                if !c.is_multiple_of(&self.diag[i]) {
                    return None;
                }
                out.push(c / &self.diag[i]);
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_contract(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d, "U·M·V ≠ D for {m}");
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for pair in diag.windows(2) {
            assert!(!pair[0].is_negative());
            if pair[0].is_zero() {
                assert!(pair[1].is_zero());
            } else {
                assert!(pair[1].is_multiple_of(&pair[0]));
            }
        }
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4)
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_contract(&m);
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).d, id);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).d, z);
        check_contract(&IntMatrix::zeros(0, 4));
        check_contract(&IntMatrix::zeros(3, 0));
    }

    #[test]
    fn divisibility_repair() {
        // diag(2, 3) must become diag(1, 6)
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(6)]);
        check_contract(&m);
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let ker = integer_kernel(&m);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.mul_vec(k).iter().all(Zero::is_zero));
        }
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let x = solve_integer(&a, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve_integer(&a, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn span_coordinates() {
        let gens = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(4)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        let span = SpanBasis::new(2, &gens);
        assert_eq!(span.rank(), 2);
        let c = span.coordinates(&[BigInt::from(4), BigInt::from(-8)]).unwrap();
        let mut back = vec![BigInt::zero(); 2];
        for (coef, b) in c.iter().zip(&span.basis) {
            for (x, y) in back.iter_mut().zip(b) {
                *x += coef * y;
            }
        }
        assert_eq!(back, vec![BigInt::from(4), BigInt::from(-8)]);
        assert!(span.coordinates(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
