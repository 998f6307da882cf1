//! Identification of small groups from their multiplication tables:
//! invariants first, then a search for Heisenberg generators and for a
//! central cyclic direct factor.

use serde::Serialize;

use super::table::SubgroupTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergMatch {
    pub n: usize,
    /// Generators `x`, `y` and their commutator `z = [x, y]`, rendered in
    /// carrier coordinates.
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub order: usize,
    pub abelian: bool,
    pub exponent: usize,
    pub center_order: usize,
    pub derived_order: usize,
    /// Invariant factors, only for abelian groups.
    pub invariant_factors: Option<Vec<usize>>,
    /// The whole group is the Heisenberg group over `Z_n`.
    pub heisenberg: Option<HeisenbergMatch>,
    /// The group splits as a Heisenberg group times a central `Z_n`.
    pub direct_factor: Option<HeisenbergMatch>,
    pub identification: String,
    pub assumption: Option<String>,
}

impl StructureReport {
    pub fn summary(&self) -> String {
        let kind = if self.abelian { "abelian" } else { "nonabelian" };
        let mut s = format!(
            "{kind}, order {}, {}; exponent {}, center order {}, derived subgroup order {}",
            self.order, self.identification, self.exponent, self.center_order, self.derived_order
        );
        if let Some(a) = &self.assumption {
            s.push_str(&format!(" [{a}]"));
        }
        s
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer `k`-th root of `m`, if exact.
fn exact_root(m: usize, k: u32) -> Option<usize> {
    let r = (m as f64).powf(1.0 / k as f64).round() as usize;
    (r.saturating_sub(1)..=r + 1).find(|&c| c >= 2 && c.checked_pow(k) == Some(m))
}

struct Facts<'a> {
    g: &'a SubgroupTable,
    orders: Vec<usize>,
    central: Vec<bool>,
}

impl<'a> Facts<'a> {
    fn new(g: &'a SubgroupTable) -> Self {
        let n = g.order();
        let orders = (0..n).map(|i| g.element_order(i)).collect();
        let central = (0..n).map(|i| (0..n).all(|j| g.mul(i, j) == g.mul(j, i))).collect();
        Facts { g, orders, central }
    }

    fn abelian_invariants(&self) -> Vec<usize> {
        let n = self.g.order();
        let mut primary: Vec<Vec<usize>> = Vec::new();
        for p in prime_factors(n) {
            // counts[k] = log_p |{x : x^{p^k} = 1}|
            let mut counts = vec![0usize];
            let mut pk = 1;
            loop {
                pk *= p;
                let c = self.orders.iter().filter(|&&o| pk % o == 0).count();
                let mut log = 0;
                let mut v = c;
                while v > 1 {
                    v /= p;
                    log += 1;
                }
                if log == *counts.last().expect("nonempty") {
                    break;
                }
                counts.push(log);
            }
            // at_least[k] = number of cyclic factors of order >= p^k
            let at_least: Vec<usize> = counts.windows(2).map(|w| w[1] - w[0]).collect();
            let mut powers = Vec::new();
            for k in 0..at_least.len() {
                let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
                powers.extend(std::iter::repeat_n(p.pow(k as u32 + 1), exactly));
            }
            powers.sort_unstable_by(|a, b| b.cmp(a));
            primary.push(powers);
        }
        let len = primary.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<usize> =
            (0..len).map(|i| primary.iter().map(|ps| ps.get(i).copied().unwrap_or(1)).product()).collect();
        factors.reverse();
        factors
    }

    /// Pairs `x, y` with `x^n = y^n = 1` whose commutator is central of
    /// order `n`, and whose span has order `n^3`. Returns the first match
    /// accepted by `accept`.
    fn heisenberg_pairs(
        &self,
        n: usize,
        mut accept: impl FnMut(usize, usize, &[bool]) -> bool,
    ) -> Option<(usize, usize, usize)> {
        let size = self.g.order();
        let target = n * n * n;
        let candidates: Vec<usize> =
            (0..size).filter(|&i| n.is_multiple_of(self.orders[i]) && !self.central[i]).collect();
        for (ix, &x) in candidates.iter().enumerate() {
            for &y in &candidates[ix + 1..] {
                let z = self.g.commutator(x, y);
                if !self.central[z] || self.orders[z] != n {
                    continue;
                }
                let span = self.g.generated(&[x, y]);
                if span.iter().filter(|&&b| b).count() == target && accept(x, y, &span) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    fn matched(&self, n: usize, (x, y, z): (usize, usize, usize)) -> HeisenbergMatch {
        HeisenbergMatch { n, x: self.g.show(x), y: self.g.show(y), z: self.g.show(z) }
    }
}

pub fn classify(g: &SubgroupTable) -> StructureReport {
    let f = Facts::new(g);
    let order = g.order();
    let exponent = f.orders.iter().fold(1, |acc, &o| acc / gcd(acc, o) * o);
    let center_order = f.central.iter().filter(|&&c| c).count();
    let abelian = center_order == order;
    let mut commutators = vec![false; order];
    for a in 0..order {
        if f.central[a] {
            continue;
        }
        for b in 0..order {
            commutators[g.commutator(a, b)] = true;
        }
    }
    let comm: Vec<usize> = (0..order).filter(|&i| commutators[i]).collect();
    let derived_order = g.generated(&comm).iter().filter(|&&b| b).count();

    let mut report = StructureReport {
        order,
        abelian,
        exponent,
        center_order,
        derived_order,
        invariant_factors: None,
        heisenberg: None,
        direct_factor: None,
        identification: "unidentified".into(),
        assumption: g.assumption().map(str::to_string),
    };
    if abelian {
        let inv = f.abelian_invariants();
        report.identification = if inv.is_empty() {
            "trivial".into()
        } else {
            inv.iter().map(|d| format!("Z_{d}")).collect::<Vec<_>>().join(" ⊕ ")
        };
        report.invariant_factors = Some(inv);
        return report;
    }
    if let Some(n) = exact_root(order, 3) {
        if let Some(m) = f.heisenberg_pairs(n, |_, _, _| true) {
            report.heisenberg = Some(f.matched(n, m));
            report.identification = format!("Heisenberg group over Z_{n}");
            return report;
        }
    }
    if let Some(n) = exact_root(order, 4) {
        let central_n: Vec<usize> = (0..order).filter(|&i| f.central[i] && f.orders[i] == n).collect();
        let found = f.heisenberg_pairs(n, |_, _, span| central_n.iter().any(|&c| (1..n).all(|k| !span[g.power(c, k)])));
        if let Some(m) = found {
            report.direct_factor = Some(f.matched(n, m));
            report.identification = format!("Heisenberg group over Z_{n} × Z_{n}");
        }
    }
    report
}
