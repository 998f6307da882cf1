//! K-theoretic profiles of finite complexes: reduced integral K-groups with
//! their graded ring, mod-n K-groups with reduction and Bockstein maps, and
//! the left action of the integral ring on the mod-n groups.

mod build;
mod expr;
mod json;
mod table;
mod validate;

pub use build::{catalog, mn_x_sigma_mn, product, smash, suspend, Splitting, Stipulation};
pub use expr::{parse_expr, SpaceExpr};
pub use table::Table;
pub use validate::{validate, CheckResult, ValidationReport};

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, Element, GroupHom};
use crate::error::{Error, Result};
use crate::Int;

/// Whether the additive structure of `K^1(X; Z_n)` is forced by the
/// Bockstein and Künneth sequences or rests on a stipulated splitting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "reason", rename_all = "lowercase")]
pub enum CarrierStatus {
    Determined,
    Stipulated(String),
    Unresolved(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KProfile {
    pub(crate) name: String,
    pub(crate) modulus: Int,
    /// `K̃^0(X)`, `K̃^1(X)`.
    pub(crate) red: [AbelianGroup; 2],
    /// `K̃^0(X; Z_n)`, `K^1(X; Z_n)`.
    pub(crate) modn: [AbelianGroup; 2],
    pub(crate) rho: [GroupHom; 2],
    /// `beta[d]: modn[d] -> red[d + 1]`.
    pub(crate) beta: [GroupHom; 2],
    /// `ring[p][q]: red[p] x red[q] -> red[p + q]`.
    pub(crate) ring: [[Table; 2]; 2],
    /// `act[p][q]: red[p] x modn[q] -> modn[p + q]`, the left action.
    pub(crate) act: [[Table; 2]; 2],
    /// False for spaces such as `S^0` whose reduced ring has idempotents.
    pub(crate) connected: bool,
    /// Status of the additive extension in each mod-n degree.
    pub(crate) modn_status: [CarrierStatus; 2],
    /// Provenance flags shown in reports ("standard-topology", stipulations).
    pub(crate) flags: Vec<String>,
}

fn check_degree(d: usize) -> Result<()> {
    if d > 1 {
        return Err(Error::input(format!("degree {d} is not 0 or 1")));
    }
    Ok(())
}

impl KProfile {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> Int {
        self.modulus
    }

    /// `K̃^d(X)`
    pub fn red(&self, d: usize) -> &AbelianGroup {
        &self.red[d % 2]
    }

    /// `K^d(X; Z_n)` (reduced in degree 0)
    pub fn modn(&self, d: usize) -> &AbelianGroup {
        &self.modn[d % 2]
    }

    pub fn rho(&self, d: usize) -> &GroupHom {
        &self.rho[d % 2]
    }

    pub fn beta(&self, d: usize) -> &GroupHom {
        &self.beta[d % 2]
    }

    pub fn ring_table(&self, p: usize, q: usize) -> &Table {
        &self.ring[p % 2][q % 2]
    }

    pub fn act_table(&self, p: usize, q: usize) -> &Table {
        &self.act[p % 2][q % 2]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Status of `K^1(X; Z_n)`, the carrier of the twisted group.
    pub fn carrier_status(&self) -> &CarrierStatus {
        &self.modn_status[1]
    }

    pub fn modn_status(&self, d: usize) -> &CarrierStatus {
        &self.modn_status[d % 2]
    }

    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    /// Internal product `x·y` of `x ∈ K̃^p`, `y ∈ K̃^q`.
    pub fn mult(&self, p: usize, x: &Element, q: usize, y: &Element) -> Result<Element> {
        check_degree(p)?;
        check_degree(q)?;
        self.member(&self.red[p], x, "K̃", p)?;
        self.member(&self.red[q], y, "K̃", q)?;
        self.ring[p][q].eval(&x.0, &y.0, &self.red[(p + q) % 2])
    }

    /// Action of `x ∈ K̃^p` on `b ∈ K^q(X; Z_n)`. The right action is
    /// `b·x = (-1)^{pq} x·b`.
    pub fn act(&self, p: usize, x: &Element, q: usize, b: &Element, side: Side) -> Result<Element> {
        check_degree(p)?;
        check_degree(q)?;
        self.member(&self.red[p], x, "K̃", p)?;
        self.member(&self.modn[q], b, "K mod n", q)?;
        let target = &self.modn[(p + q) % 2];
        let left = self.act[p][q].eval(&x.0, &b.0, target)?;
        match side {
            Side::Right if p * q == 1 => target.neg(&left),
            _ => Ok(left),
        }
    }

    fn member(&self, g: &AbelianGroup, x: &Element, what: &str, d: usize) -> Result<()> {
        if !g.contains(x) {
            return Err(Error::input(format!("{:?} is not an element of {what}^{d} = {g} of {}", x.0, self.name)));
        }
        Ok(())
    }

    /// Looks up a generator of `group` by its label.
    pub fn generator(group: &AbelianGroup, label: &str) -> Result<Element> {
        group
            .label_index(label)
            .map(|i| group.gen(i))
            .ok_or_else(|| Error::input(format!("no generator labelled {label} in {}", group.pretty())))
    }

    /// Replaces `from` by `to` in every generator label.
    pub fn relabel(&self, from: &str, to: &str) -> Result<KProfile> {
        let fix = |g: &AbelianGroup| -> Result<AbelianGroup> {
            g.clone().with_labels(g.labels().iter().map(|l| l.replace(from, to)).collect())
        };
        let mut p = self.clone();
        for d in 0..2 {
            p.red[d] = fix(&self.red[d])?;
            p.modn[d] = fix(&self.modn[d])?;
        }
        for d in 0..2 {
            p.rho[d] = GroupHom::new(p.red[d].clone(), p.modn[d].clone(), self.rho[d].matrix().clone())?;
            p.beta[d] = GroupHom::new(p.modn[d].clone(), p.red[(d + 1) % 2].clone(), self.beta[d].matrix().clone())?;
        }
        Ok(p)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Copy with `beta[d]` replaced; the result is not validated.
    pub fn override_beta(&self, d: usize, beta: GroupHom) -> Result<KProfile> {
        check_degree(d)?;
        if beta.domain() != &self.modn[d] || beta.codomain() != &self.red[(d + 1) % 2] {
            return Err(Error::input("replacement Bockstein has the wrong domain or codomain"));
        }
        let mut p = self.clone();
        p.beta[d] = beta;
        Ok(p)
    }

    /// Copy with one ring-table entry replaced; the result is not validated.
    pub fn override_ring_entry(&self, p: usize, q: usize, a: usize, b: usize, value: &[Int]) -> Result<KProfile> {
        check_degree(p)?;
        check_degree(q)?;
        let (l, r) = self.ring[p][q].shape();
        if a >= l || b >= r {
            return Err(Error::input(format!("ring entry ({a}, {b}) out of range")));
        }
        let e = self.red[(p + q) % 2].reduce(value)?;
        let mut out = self.clone();
        out.ring[p][q].set(a, b, e);
        Ok(out)
    }

    /// Multi-line text report of groups and maps.
    pub fn report(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("space: {}   n = {}\n", self.name, self.modulus));
        s.push_str(&format!("K̃^0        = {}\n", self.red[0].pretty()));
        s.push_str(&format!("K̃^1        = {}\n", self.red[1].pretty()));
        s.push_str(&format!("K̃^0(;Z_{}) = {}\n", self.modulus, self.modn[0].pretty()));
        s.push_str(&format!("K^1(;Z_{})  = {}\n", self.modulus, self.modn[1].pretty()));
        let map = |name: String, h: &GroupHom| {
            if h.domain().is_trivial() || h.codomain().is_trivial() {
                format!("{name}: 0\n")
            } else {
                format!("{name}:\n{}", indent(&h.matrix().to_string()))
            }
        };
        for d in 0..2 {
            s.push_str(&map(format!("rho{d}"), &self.rho[d]));
        }
        for d in 0..2 {
            s.push_str(&map(format!("beta{d}"), &self.beta[d]));
        }
        let mut seen = Vec::new();
        for status in &self.modn_status {
            if seen.contains(&status) {
                continue;
            }
            seen.push(status);
            match status {
                CarrierStatus::Determined => {}
                CarrierStatus::Stipulated(why) => s.push_str(&format!("assumption: {why}\n")),
                CarrierStatus::Unresolved(why) => s.push_str(&format!("unresolved: {why}\n")),
            }
        }
        for f in &self.flags {
            let shown = seen
                .iter()
                .any(|st| matches!(st, CarrierStatus::Stipulated(why) if *f == format!("stipulated: {why}")));
            if !shown {
                s.push_str(&format!("flag: {f}\n"));
            }
        }
        s
    }
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("  {l}\n")).collect()
}
