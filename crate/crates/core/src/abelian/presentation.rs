use crate::abelian::group::{check_chain, combination, AbelianGroup, Element};
use crate::error::{Error, Result};
use crate::snf::smith_normal_form;
use crate::{Int, IntMatrix};

/// A group in invariant-factor form together with the change of basis from
/// the coordinates it was presented in.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: AbelianGroup,
    /// `ngens(new) x ngens(old)`: old coordinates to new.
    to_new: IntMatrix,
    /// `ngens(old) x ngens(new)`: new generators written in old coordinates.
    to_old: IntMatrix,
}

impl Presentation {
    pub fn to_new(&self) -> &IntMatrix {
        &self.to_new
    }

    pub fn to_old(&self) -> &IntMatrix {
        &self.to_old
    }

    /// Class of an old-coordinate vector in the normalized group.
    pub fn express(&self, old: &[Int]) -> Result<Element> {
        let v = self.to_new.mul_vec(old)?;
        self.group.reduce(&v)
    }

    /// Old-coordinate representative of a normalized element.
    pub fn lift(&self, e: &Element) -> Result<Vec<Int>> {
        self.to_old.mul_vec(&e.0)
    }

    pub fn old_ngens(&self) -> usize {
        self.to_new.cols()
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Cokernel of the relation matrix (rows are relations among `num_gens`
/// generators), in invariant-factor form.
pub fn from_presentation(num_gens: usize, relations: &IntMatrix, labels: Option<&[String]>) -> Result<Presentation> {
    if relations.cols() != num_gens {
        return Err(Error::input(format!(
            "relation matrix has {} columns for {} generators",
            relations.cols(),
            num_gens
        )));
    }
    let labels = labels.map(|l| l.to_vec()).unwrap_or_else(|| default_labels(num_gens));
    if labels.len() != num_gens {
        return Err(Error::input("label count does not match generator count"));
    }
    let snf = smith_normal_form(relations)?;
    let diag = snf.diagonal();
    let mut factors = Vec::new();
    let mut new_labels = Vec::new();
    let mut to_new_rows = Vec::new();
    let mut to_old_cols = Vec::new();
    for i in 0..num_gens {
        let d = diag.get(i).copied().unwrap_or(0);
        if d == 1 {
            continue;
        }
        factors.push(d);
        let back = snf.v_inv.row(i);
        new_labels.push(combination(&back, &labels));
        to_new_rows.push(snf.v.col(i));
        to_old_cols.push(back);
    }
    let k = factors.len();
    let to_new = IntMatrix::from_rows(&to_new_rows, num_gens)?;
    let to_old = IntMatrix::from_cols(&to_old_cols, num_gens)?;
    let mut to_new = to_new;
    for (r, &d) in factors.iter().enumerate() {
        for c in 0..num_gens {
            to_new[(r, c)] = crate::num::IntScalar::modulo(to_new[(r, c)], d);
        }
    }
    debug_assert_eq!(to_old.shape(), (num_gens, k));
    Ok(Presentation { group: AbelianGroup::new(factors, new_labels)?, to_new, to_old })
}

/// Normalizes a direct sum of cyclic groups of the given orders (0 = Z, 1 =
/// trivial). When the orders already form a chain up to reordering the
/// generators are only permuted, keeping their labels.
pub fn normalize(orders: &[Int], labels: &[String]) -> Result<Presentation> {
    if orders.len() != labels.len() {
        return Err(Error::input("label count does not match order count"));
    }
    if let Some(&d) = orders.iter().find(|&&d| d < 0) {
        return Err(Error::input(format!("negative cyclic order {d}")));
    }
    let mut idx: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] != 1).collect();
    idx.sort_by_key(|&i| (orders[i] == 0, orders[i]));
    let sorted: Vec<Int> = idx.iter().map(|&i| orders[i]).collect();
    if check_chain(&sorted).is_ok() {
        let k = idx.len();
        let mut to_new = IntMatrix::zeros(k, orders.len());
        let mut to_old = IntMatrix::zeros(orders.len(), k);
        for (pos, &i) in idx.iter().enumerate() {
            to_new[(pos, i)] = 1;
            to_old[(i, pos)] = 1;
        }
        let group = AbelianGroup::new(sorted, idx.iter().map(|&i| labels[i].clone()).collect())?;
        return Ok(Presentation { group, to_new, to_old });
    }
    let rows: Vec<Vec<Int>> = orders
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| {
            let mut r = vec![0; orders.len()];
            r[i] = d;
            r
        })
        .collect();
    let rel = IntMatrix::from_rows(&rows, orders.len())?;
    from_presentation(orders.len(), &rel, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_free_presentations() {
        let p = from_presentation(1, &IntMatrix::from_i64_rows(&[&[5]]), None).unwrap();
        assert_eq!(p.group.factors(), &[5]);
        let p = from_presentation(2, &IntMatrix::zeros(0, 2), None).unwrap();
        assert_eq!(p.group.factors(), &[0, 0]);
        let p = from_presentation(2, &IntMatrix::from_i64_rows(&[&[2, 0], &[0, 4]]), None).unwrap();
        assert_eq!(p.group.factors(), &[2, 4]);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(from_presentation(3, &IntMatrix::from_i64_rows(&[&[1, 2]]), None).is_err());
    }

    #[test]
    fn coprime_orders_merge() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let p = normalize(&[2, 3], &labels).unwrap();
        assert_eq!(p.group.factors(), &[6]);
        // a has order 2 in Z_6, b order 3
        let a = p.express(&[1, 0]).unwrap();
        let b = p.express(&[0, 1]).unwrap();
        assert_eq!(p.group.element_order(&a), Some(2));
        assert_eq!(p.group.element_order(&b), Some(3));
        let back = p.lift(&p.group.gen(0)).unwrap();
        assert_eq!(p.express(&back).unwrap(), p.group.gen(0));
    }

    #[test]
    fn permutation_keeps_labels() {
        let labels: Vec<String> = ["z", "t", "u"].iter().map(|s| s.to_string()).collect();
        let p = normalize(&[0, 4, 2], &labels).unwrap();
        assert_eq!(p.group.factors(), &[2, 4, 0]);
        assert_eq!(p.group.labels(), &["u", "t", "z"]);
    }
}
