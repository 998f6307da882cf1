use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::IntScalar;
use crate::{Int, IntMatrix};

/// Finitely generated abelian group in invariant-factor form.
///
/// `factors` holds `d_1 | d_2 | ... | d_k` followed by zeros (one per free
/// summand); no factor equals 1. Labels name the generators and are ignored
/// by equality.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct AbelianGroup {
    factors: Vec<Int>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    factors: Vec<Int>,
    labels: Vec<String>,
}

impl TryFrom<GroupRepr> for AbelianGroup {
    type Error = Error;
    fn try_from(r: GroupRepr) -> Result<Self> {
        AbelianGroup::new(r.factors, r.labels)
    }
}

impl From<AbelianGroup> for GroupRepr {
    fn from(g: AbelianGroup) -> Self {
        GroupRepr { factors: g.factors, labels: g.labels }
    }
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for AbelianGroup {}

/// Coefficient vector of an element in the generators of its group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub Vec<Int>);

impl Element {
    pub fn coeffs(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

pub(crate) fn check_chain(factors: &[Int]) -> Result<()> {
    let mut seen_free = false;
    let mut prev: Int = 1;
    for &d in factors {
        if d < 0 || d == 1 {
            return Err(Error::input(format!("invalid invariant factor {d}")));
        }
        if d == 0 {
            seen_free = true;
            continue;
        }
        if seen_free {
            return Err(Error::input("finite factor after a free summand"));
        }
        if d % prev != 0 {
            return Err(Error::input(format!("{prev} does not divide {d}")));
        }
        prev = d;
    }
    Ok(())
}

impl AbelianGroup {
    pub fn new(factors: Vec<Int>, labels: Vec<String>) -> Result<Self> {
        check_chain(&factors)?;
        if labels.len() != factors.len() {
            return Err(Error::input(format!("{} labels for {} factors", labels.len(), factors.len())));
        }
        Ok(AbelianGroup { factors, labels })
    }

    /// Unlabeled group; generators are named `e0, e1, ...`.
    pub fn from_factors(factors: &[Int]) -> Result<Self> {
        let labels = (0..factors.len()).map(|i| format!("e{i}")).collect();
        Self::new(factors.to_vec(), labels)
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![], labels: vec![] }
    }

    pub fn cyclic(d: Int, label: &str) -> Self {
        if d == 1 {
            return Self::trivial();
        }
        AbelianGroup { factors: vec![d], labels: vec![label.to_string()] }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_factors(&vec![0; rank]).expect("free group")
    }

    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.factors.len() {
            return Err(Error::input("label count mismatch"));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Number of cyclic summands.
    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Cardinality, or `None` for infinite groups (and on `u128` overflow).
    pub fn order(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &d| if d == 0 { None } else { acc.checked_mul(d as u128) })
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.ngens()])
    }

    pub fn gen(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.0[i] = 1;
        e
    }

    pub fn gens(&self) -> Vec<Element> {
        (0..self.ngens()).map(|i| self.gen(i)).collect()
    }

    /// Reduces arbitrary integer coordinates into canonical form.
    pub fn reduce(&self, coeffs: &[Int]) -> Result<Element> {
        if coeffs.len() != self.ngens() {
            return Err(Error::input(format!(
                "element with {} coefficients in a group with {} generators",
                coeffs.len(),
                self.ngens()
            )));
        }
        Ok(Element(coeffs.iter().zip(&self.factors).map(|(&c, &d)| c.modulo(d)).collect()))
    }

    pub fn element(&self, coeffs: &[Int]) -> Result<Element> {
        self.reduce(coeffs)
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.len() == self.ngens() && e.0.iter().zip(&self.factors).all(|(&c, &d)| d == 0 || (0..d).contains(&c))
    }

    fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::input(format!("{:?} is not an element of {}", e.0, self)))
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        let sum: Result<Vec<Int>> = a.0.iter().zip(&b.0).map(|(&x, &y)| x.cadd(y)).collect();
        self.reduce(&sum?)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.add(a, &self.neg(b)?)
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        let v: Result<Vec<Int>> = a.0.iter().map(|&x| x.cneg()).collect();
        self.reduce(&v?)
    }

    pub fn scale(&self, k: Int, a: &Element) -> Result<Element> {
        self.check(a)?;
        let v: Result<Vec<Int>> = a.0.iter().map(|&x| x.cmul(k)).collect();
        self.reduce(&v?)
    }

    /// Additive order, `None` when infinite.
    pub fn element_order(&self, a: &Element) -> Option<Int> {
        let mut ord: Int = 1;
        for (&c, &d) in a.0.iter().zip(&self.factors) {
            if c == 0 {
                continue;
            }
            if d == 0 {
                return None;
            }
            let k = d / crate::num::gcd(c, d);
            ord = ord / crate::num::gcd(ord, k) * k;
        }
        Some(ord)
    }

    /// All elements in lexicographic coefficient order (first coordinate most
    /// significant). Fails on infinite groups or when the order exceeds `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Element>> {
        let order = self.order().ok_or_else(|| Error::unsupported("enumerating an infinite group"))?;
        if order > limit as u128 {
            return Err(Error::Resource { what: format!("|{}| = {}", self, order), limit });
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![0; self.ngens()];
        loop {
            out.push(Element(cur.clone()));
            let mut i = self.ngens();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Position of `e` in the order produced by [`elements`](Self::elements).
    pub fn rank_of(&self, e: &Element) -> usize {
        e.0.iter().zip(&self.factors).fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> Result<AbelianGroup> {
        let mut orders = self.factors.clone();
        orders.extend_from_slice(&other.factors);
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Ok(crate::abelian::normalize(&orders, &labels)?.group)
    }

    /// Human-readable form such as `Z_3⟨g⟩ ⊕ Z⟨t⟩`, or `0`.
    pub fn pretty(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        self.factors
            .iter()
            .zip(&self.labels)
            .map(|(&d, l)| if d == 0 { format!("Z⟨{l}⟩") } else { format!("Z_{d}⟨{l}⟩") })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }

    /// Render an element as a combination of generator labels.
    pub fn show(&self, e: &Element) -> String {
        combination(&e.0, &self.labels)
    }
}

pub(crate) fn combination(coeffs: &[Int], labels: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .zip(labels)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, l)| match c {
            1 => l.clone(),
            -1 => format!("-{l}"),
            _ => format!("{c}{l}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+").replace("+-", "-")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|&d| if d == 0 { "Z".into() } else { format!("Z_{d}") }).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Homomorphism given by an integer matrix acting on coefficient columns
/// (`codomain.ngens()` rows, `domain.ngens()` columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates well-definedness and reduces entries modulo the codomain.
    pub fn new(domain: AbelianGroup, codomain: AbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (codomain.ngens(), domain.ngens()) {
            return Err(Error::input(format!(
                "matrix shape {:?} does not fit {} -> {}",
                matrix.shape(),
                domain,
                codomain
            )));
        }
        let mut m = matrix;
        for (j, &dj) in domain.factors().iter().enumerate() {
            for (i, &ci) in codomain.factors().iter().enumerate() {
                let v = m[(i, j)];
                if dj > 0 {
                    let image = v.cmul(dj)?;
                    if image.modulo(ci) != 0 {
                        return Err(Error::input(format!(
                            "not well defined: generator {} of order {} maps to coefficient {} in Z_{}",
                            domain.labels()[j],
                            dj,
                            v,
                            ci
                        )));
                    }
                }
                m[(i, j)] = v.modulo(ci);
            }
        }
        Ok(GroupHom { domain, codomain, matrix: m })
    }

    pub fn from_rows(domain: &AbelianGroup, codomain: &AbelianGroup, rows: &[Vec<Int>]) -> Result<Self> {
        let m = IntMatrix::from_rows(rows, domain.ngens())?;
        Self::new(domain.clone(), codomain.clone(), m)
    }

    pub fn zero(domain: &AbelianGroup, codomain: &AbelianGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.ngens(), domain.ngens()),
        }
    }

    pub fn identity(g: &AbelianGroup) -> Self {
        GroupHom { domain: g.clone(), codomain: g.clone(), matrix: IntMatrix::identity(g.ngens()) }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &AbelianGroup, k: Int) -> Result<Self> {
        let m = IntMatrix::diagonal(&vec![k; g.ngens()]);
        Self::new(g.clone(), g.clone(), m)
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !self.domain.contains(x) {
            return Err(Error::input(format!("{:?} is not in the domain {}", x.0, self.domain)));
        }
        let v = self.matrix.mul_vec(&x.0)?;
        self.codomain.reduce(&v)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.codomain != other.domain {
            return Err(Error::input(format!("cannot compose: {} is not {}", self.codomain, other.domain)));
        }
        GroupHom::new(self.domain.clone(), other.codomain.clone(), other.matrix.mul(&self.matrix)?)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] = m[(i, j)].cadd(other.matrix[(i, j)])?;
            }
        }
        GroupHom::new(self.domain.clone(), self.codomain.clone(), m)
    }
}
