use serde::Serialize;

use crate::abelian::Element;

/// A finite group given by its multiplication table. Elements are kept in
/// lexicographic order of their coefficient vectors; `table[i][j]` is the
/// index of `elements[i] ∘ elements[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupTable {
    elements: Vec<Element>,
    table: Vec<Vec<usize>>,
    identity: usize,
    labels: Vec<String>,
    assumption: Option<String>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    order: usize,
    table: &'a [Vec<usize>],
}

impl SubgroupTable {
    pub(crate) fn new(
        elements: Vec<Element>,
        table: Vec<Vec<usize>>,
        identity: usize,
        labels: Vec<String>,
        assumption: Option<String>,
    ) -> Self {
        SubgroupTable { elements, table, identity, labels, assumption }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn assumption(&self) -> Option<&str> {
        self.assumption.as_deref()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// Inverse found by scanning the row for the identity.
    pub fn inverse_of(&self, i: usize) -> Option<usize> {
        self.table[i].iter().position(|&k| k == self.identity)
    }

    pub fn power(&self, i: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, i))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut cur = i;
        let mut k = 1;
        while cur != self.identity {
            cur = self.mul(cur, i);
            k += 1;
        }
        k
    }

    /// `a^{-1} b^{-1} a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ai = self.inverse_of(a).expect("group table");
        let bi = self.inverse_of(b).expect("group table");
        self.mul(self.mul(ai, bi), self.mul(a, b))
    }

    pub fn show(&self, i: usize) -> String {
        crate::abelian::combination(&self.elements[i].0, &self.labels)
    }

    /// `{"order": N, "table": [[...]]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson { order: self.order(), table: &self.table }).expect("table serializes")
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(e) = queue.pop() {
            for &g in gens {
                let next = self.mul(e, g);
                if !seen[next] {
                    seen[next] = true;
                    queue.push(next);
                }
            }
        }
        seen
    }

    pub fn is_group(&self) -> bool {
        let n = self.order();
        let assoc =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))));
        let ident = (0..n).all(|a| self.mul(a, self.identity) == a && self.mul(self.identity, a) == a);
        let inv = (0..n).all(|a| self.inverse_of(a).is_some_and(|b| self.mul(b, a) == self.identity));
        ident && inv && assoc
    }
}
