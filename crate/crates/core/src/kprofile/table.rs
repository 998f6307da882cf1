use crate::abelian::{AbelianGroup, Element};
use crate::error::{Error, Result};
use crate::num::IntScalar;
use crate::Int;

/// Bilinear pairing on generators: `get(a, b)` is the product of left
/// generator `a` with right generator `b`, as an element of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    left: usize,
    right: usize,
    target_len: usize,
    entries: Vec<Element>,
}

impl Table {
    pub fn zero(left: usize, right: usize, target: &AbelianGroup) -> Self {
        Table { left, right, target_len: target.ngens(), entries: vec![target.zero(); left * right] }
    }

    pub fn from_fn(
        left: usize,
        right: usize,
        target: &AbelianGroup,
        mut f: impl FnMut(usize, usize) -> Result<Element>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(left * right);
        for a in 0..left {
            for b in 0..right {
                let e = f(a, b)?;
                if !target.contains(&e) {
                    return Err(Error::input(format!("table entry {:?} is not in {}", e.0, target)));
                }
                entries.push(e);
            }
        }
        Ok(Table { left, right, target_len: target.ngens(), entries })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.left, self.right)
    }

    pub fn get(&self, a: usize, b: usize) -> &Element {
        &self.entries[a * self.right + b]
    }

    pub fn set(&mut self, a: usize, b: usize, e: Element) {
        self.entries[a * self.right + b] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Element::is_zero)
    }

    /// Bilinear extension to coefficient vectors.
    pub fn eval(&self, x: &[Int], y: &[Int], target: &AbelianGroup) -> Result<Element> {
        if x.len() != self.left || y.len() != self.right {
            return Err(Error::input(format!(
                "operands of length ({}, {}) for a {}x{} table",
                x.len(),
                y.len(),
                self.left,
                self.right
            )));
        }
        let mut acc = vec![0; self.target_len];
        let support: Vec<(usize, Int)> = y.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for &(b, yb) in &support {
                let c = xa.cmul(yb)?;
                for (k, &v) in self.get(a, b).0.iter().enumerate() {
                    if v != 0 {
                        acc[k] = acc[k].cadd(c.cmul(v)?)?;
                    }
                }
            }
        }
        target.reduce(&acc)
    }

    /// Nonzero entries as `(a, b, coeffs)`.
    pub fn sparse(&self) -> Vec<(usize, usize, Vec<Int>)> {
        let mut out = Vec::new();
        for a in 0..self.left {
            for b in 0..self.right {
                let e = self.get(a, b);
                if !e.is_zero() {
                    out.push((a, b, e.0.clone()));
                }
            }
        }
        out
    }

    pub fn from_sparse(
        left: usize,
        right: usize,
        target: &AbelianGroup,
        entries: &[(usize, usize, Vec<Int>)],
    ) -> Result<Self> {
        let mut t = Table::zero(left, right, target);
        for (a, b, c) in entries {
            if *a >= left || *b >= right {
                return Err(Error::input(format!("table index ({a}, {b}) out of range {left}x{right}")));
            }
            t.set(*a, *b, target.reduce(c)?);
        }
        Ok(t)
    }
}
