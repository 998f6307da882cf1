//! Smith and Hermite normal forms over the integers.

use crate::error::Result;
use crate::matrix::Matrix;
use crate::num::{ext_gcd, IntScalar};

/// `u * m * v == d`, with `u`, `v` unimodular and `v_inv` the inverse of `v`.
#[derive(Debug, Clone)]
pub struct SmithForm<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: IntScalar> SmithForm<T> {
    /// Diagonal entries `d_0, ..., d_{min(r,c)-1}` (zeros included).
    pub fn diagonal(&self) -> Vec<T> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Basis of the integer kernel `{x : m x = 0}` as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        (self.rank()..self.v.cols()).map(|j| self.v.col(j)).collect()
    }
}

struct Calc<T> {
    d: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: IntScalar> Calc<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: T) -> Result<()> {
        self.d.add_row(dst, src, c)?;
        self.u.add_row(dst, src, c)
    }

    fn add_col(&mut self, dst: usize, src: usize, c: T) -> Result<()> {
        self.d.add_col(dst, src, c)?;
        self.v.add_col(dst, src, c)?;
        self.v_inv.add_row(src, dst, c.cneg()?)
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        self.d.negate_row(i)?;
        self.u.negate_row(i)
    }

    /// Smallest nonzero entry of the block from `(t, t)`; ties go to the
    /// entry whose row of `u` and column of `v` are smallest, which slows the
    /// growth of the transforms.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let norm = |xs: Vec<T>| xs.into_iter().fold(T::zero(), |acc, x| acc.saturating_add(x.abs()));
        let mut best: Option<((T, T), (usize, usize))> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_some_and(|((b, _), _)| x.abs() > b) {
                    continue;
                }
                let key = (x.abs(), norm(self.u.row(i)).saturating_add(norm(self.v.col(j))));
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, (i, j)));
                }
            }
        }
        best.map(|(_, at)| at)
    }

    fn combine_rows(&mut self, a: usize, b: usize, e: [T; 4]) -> Result<()> {
        self.d.combine_rows(a, b, e)?;
        self.u.combine_rows(a, b, e)
    }

    // The 2x2 block has determinant 1, so its inverse is [[s, -r], [-q, p]].
    fn combine_cols(&mut self, a: usize, b: usize, [p, q, r, s]: [T; 4]) -> Result<()> {
        self.d.combine_cols(a, b, [p, q, r, s])?;
        self.v.combine_cols(a, b, [p, q, r, s])?;
        self.v_inv.combine_rows(a, b, [s, -r, -q, p])
    }

    /// Euclidean elimination to a diagonal matrix: the pivot is always a
    /// smallest nonzero entry of the remaining block and the rest of its row
    /// and column are reduced modulo it.
    fn diagonalize(&mut self) -> Result<()> {
        let (rows, cols) = self.d.shape();
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else { return Ok(()) };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.d[(t, t)];
                let mut clear = true;
                for i in t + 1..rows {
                    let q = nearest_quotient(self.d[(i, t)], p);
                    if !q.is_zero() {
                        self.add_row(i, t, q.cneg()?)?;
                    }
                    clear &= self.d[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    let q = nearest_quotient(self.d[(t, j)], p);
                    if !q.is_zero() {
                        self.add_col(j, t, q.cneg()?)?;
                    }
                    clear &= self.d[(t, j)].is_zero();
                }
                if clear {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Replaces diagonal entries `a = d_i`, `b = d_j` by `gcd` and `lcm`.
    fn gcd_lcm(&mut self, i: usize, j: usize) -> Result<()> {
        let (a, b) = (self.d[(i, i)], self.d[(j, j)]);
        let (g, s, t) = ext_gcd(a, b)?;
        self.combine_rows(i, j, [s, t, -(b / g), a / g])?;
        self.combine_cols(i, j, [T::one(), T::one(), -(t * (b / g)), s * (a / g)])
    }

    /// Diagonal form, then the divisibility chain with nonnegative entries
    /// and zeros last.
    fn run(&mut self) -> Result<()> {
        self.diagonalize()?;
        let k = self.d.rows().min(self.d.cols());
        for i in 0..k {
            if self.d[(i, i)] < T::zero() {
                self.negate_row(i)?;
            }
        }
        let rank = (0..k).take_while(|&i| !self.d[(i, i)].is_zero()).count();
        for i in 0..rank {
            for j in i + 1..rank {
                let (a, b) = (self.d[(i, i)], self.d[(j, j)]);
                if !(b % a).is_zero() {
                    self.gcd_lcm(i, j)?;
                }
            }
            if self.d[(i, i)] < T::zero() {
                self.negate_row(i)?;
            }
        }
        for i in 0..rank {
            if self.d[(i, i)] < T::zero() {
                self.negate_row(i)?;
            }
        }
        Ok(())
    }
}

/// `q` with `|b - q p| <= |p| / 2`.
fn nearest_quotient<T: IntScalar>(b: T, p: T) -> T {
    let q = b / p;
    let r = b - q * p;
    let two = T::one() + T::one();
    if (r.abs() * two) > p.abs() {
        if (r < T::zero()) == (p < T::zero()) {
            q + T::one()
        } else {
            q - T::one()
        }
    } else {
        q
    }
}

/// Smith normal form with transforms. Diagonal entries are nonnegative, form
/// a divisibility chain, and zeros trail the nonzero entries.
pub fn smith_normal_form<T: IntScalar>(m: &Matrix<T>) -> Result<SmithForm<T>> {
    let (rows, cols) = m.shape();
    let mut calc =
        Calc { d: m.clone(), u: Matrix::identity(rows), v: Matrix::identity(cols), v_inv: Matrix::identity(cols) };
    calc.run()?;
    Ok(SmithForm { u: calc.u, d: calc.d, v: calc.v, v_inv: calc.v_inv })
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// Returns the nonzero rows (echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`) and the pivot columns. The result depends
/// only on the row lattice.
pub fn hermite_rows<T: IntScalar>(m: &Matrix<T>) -> Result<(Matrix<T>, Vec<usize>)> {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            let (x, y) = (a[(r, c)], a[(i, c)]);
            if y.is_zero() {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y)?;
            a.combine_rows(r, i, [s, t, -(y / g), x / g])?;
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)] < T::zero() {
            a.negate_row(r)?;
        }
        let p = a[(r, c)];
        for i in 0..r {
            let q = floor_div(a[(i, c)], p);
            a.add_row(i, r, -q)?;
        }
        pivots.push(c);
        r += 1;
    }
    let kept: Vec<Vec<T>> = (0..r).map(|i| a.row(i)).collect();
    Ok((Matrix::from_rows(&kept, cols)?, pivots))
}

fn floor_div<T: IntScalar>(a: T, b: T) -> T {
    let q = a / b;
    if (a % b).is_zero() || (a < T::zero()) == (b < T::zero()) {
        q
    } else {
        q - T::one()
    }
}

/// Coordinates of `v` in an echelon basis produced by [`hermite_rows`], or
/// `None` when `v` is outside the lattice.
pub fn echelon_coords<T: IntScalar>(basis: &Matrix<T>, pivots: &[usize], v: &[T]) -> Result<Option<Vec<T>>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(pivots.len());
    for (t, &p) in pivots.iter().enumerate() {
        let b = basis[(t, p)];
        if !(rest[p] % b).is_zero() {
            return Ok(None);
        }
        let c = rest[p] / b;
        for (j, r) in rest.iter_mut().enumerate() {
            *r = r.csub(c.cmul(basis[(t, j)])?)?;
        }
        coords.push(c);
    }
    Ok(if rest.iter().all(|x| x.is_zero()) { Some(coords) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check<T: IntScalar>(m: &Matrix<T>) -> SmithForm<T> {
        let s = smith_normal_form(m).unwrap();
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), Matrix::identity(m.cols()));
        assert_eq!(s.u.determinant().unwrap().abs(), T::one());
        s
    }

    #[test]
    fn two_by_two() {
        let s = check(&Matrix::<i64>::from_i64_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal(), vec![2, 4]);
    }

    #[test]
    fn equal_magnitude_entries_terminate() {
        let m = Matrix::<i64>::from_i64_rows(&[
            &[5, -8, -1, -5, -1],
            &[-1, -2, -8, -6, -9],
            &[8, -7, -9, 8, -6],
            &[5, -2, 2, -5, 0],
        ]);
        let s = check(&m);
        assert_eq!(s.rank(), 4);
        assert_eq!(&s.diagonal()[..3], &[1, 1, 1]);
    }

    #[test]
    fn identity_and_zero_are_fixed() {
        assert_eq!(check(&Matrix::<i64>::identity(3)).d, Matrix::identity(3));
        assert!(check(&Matrix::<i64>::zeros(2, 3)).d.is_zero());
    }

    #[test]
    fn generic_over_width() {
        let m32 = Matrix::<i32>::from_i64_rows(&[&[4, 6], &[6, 9], &[2, 3]]);
        assert_eq!(check(&m32).diagonal(), vec![1, 0]);
        let m128 = Matrix::<i128>::from_i64_rows(&[&[12, 0], &[0, 18]]);
        assert_eq!(check(&m128).diagonal(), vec![6, 36]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i8::MAX as i64;
        let m = Matrix::<i8>::from_i64_rows(&[&[big, big - 1], &[big - 2, big]]);
        assert!(smith_normal_form(&m).is_err() || check(&m).diagonal()[0] == 1);
        let a = Matrix::<i8>::from_i64_rows(&[&[100]]);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn hermite_is_lattice_canonical() {
        let a = Matrix::<i64>::from_i64_rows(&[&[2, 4], &[0, 6]]);
        let b = Matrix::<i64>::from_i64_rows(&[&[2, 10], &[2, 4], &[4, 14]]);
        assert_eq!(hermite_rows(&a).unwrap().0, hermite_rows(&b).unwrap().0);
        let (h, p) = hermite_rows(&a).unwrap();
        assert_eq!(echelon_coords(&h, &p, &[4, 2]).unwrap(), Some(vec![2, -1]));
        assert_eq!(echelon_coords(&h, &p, &[1, 0]).unwrap(), None);
    }
}
