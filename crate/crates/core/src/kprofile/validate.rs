use serde::Serialize;

use super::{KProfile, Side};
use crate::abelian::{is_exact_cyclic, AbelianGroup, Element, ExactnessReport, GroupHom};
use crate::error::Result;
use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Counterexample or note; empty when the check passed outright.
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub profile: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Per-node data for the Bockstein cycle, when the maps compose.
    pub exactness: Option<ExactnessReport>,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn text(&self) -> String {
        let mut s = format!("validate {}\n", self.profile);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                s.push_str(&format!("  {mark} {}\n", c.name));
            } else {
                s.push_str(&format!("  {mark} {}: {}\n", c.name, c.detail));
            }
        }
        s
    }
}

const NODE_NAMES: [&str; 6] = ["K̃^0", "K̃^0(;Z_n)", "K̃^1", "K̃^1", "K^1(;Z_n)", "K̃^0"];

/// Collects the first failure of a check, or a pass.
struct Check {
    name: &'static str,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, failure: None }
    }

    fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn done(self) -> CheckResult {
        CheckResult { name: self.name.into(), passed: self.failure.is_none(), detail: self.failure.unwrap_or_default() }
    }
}

fn sign(k: usize) -> Int {
    if k % 2 == 1 {
        -1
    } else {
        1
    }
}

fn label(g: &AbelianGroup, i: usize) -> &str {
    &g.labels()[i]
}

/// Runs every structural invariant of a profile.
pub fn validate(p: &KProfile) -> Result<ValidationReport> {
    let mut checks = Vec::new();
    let (exactness, check) = bockstein(p)?;
    checks.push(check);
    checks.push(well_defined(p)?);
    checks.push(sign_rule(p)?);
    checks.push(ring_associativity(p)?);
    checks.push(nilpotency(p)?);
    checks.push(action_associativity(p)?);
    checks.extend(compatibilities(p)?);
    Ok(ValidationReport { profile: p.name.clone(), passed: checks.iter().all(|c| c.passed), checks, exactness })
}

fn bockstein(p: &KProfile) -> Result<(Option<ExactnessReport>, CheckResult)> {
    let n = p.modulus;
    let cycle = [
        GroupHom::scalar(&p.red[0], -n)?,
        p.rho[0].clone(),
        p.beta[0].clone(),
        GroupHom::scalar(&p.red[1], -n)?,
        p.rho[1].clone(),
        p.beta[1].clone(),
    ];
    let mut check = Check::new("bockstein-exactness");
    let report = match is_exact_cyclic(&cycle) {
        Ok(r) => r,
        Err(e) => {
            check.require(false, || format!("maps do not compose: {e}"));
            return Ok((None, check.done()));
        }
    };
    let bad: Vec<String> = report
        .nodes
        .iter()
        .filter(|node| !node.exact)
        .map(|node| format!("at {}: image {} vs kernel {}", NODE_NAMES[node.node], node.image, node.kernel))
        .collect();
    check.require(bad.is_empty(), || bad.join("; "));
    Ok((Some(report), check.done()))
}

fn killed_by_order(g: &AbelianGroup, i: usize, target: &AbelianGroup, e: &Element) -> Result<bool> {
    let d = g.factors()[i];
    Ok(d == 0 || target.scale(d, e)?.is_zero())
}

fn well_defined(p: &KProfile) -> Result<CheckResult> {
    let mut check = Check::new("tables-well-defined");
    for a in 0..2 {
        for b in 0..2 {
            let r = (a + b) % 2;
            for (left, right, target, table, what) in [
                (&p.red[a], &p.red[b], &p.red[r], &p.ring[a][b], "ring"),
                (&p.red[a], &p.modn[b], &p.modn[r], &p.act[a][b], "action"),
            ] {
                for i in 0..left.ngens() {
                    for j in 0..right.ngens() {
                        let e = table.get(i, j);
                        let ok = killed_by_order(left, i, target, e)? && killed_by_order(right, j, target, e)?;
                        check.require(ok, || {
                            format!(
                                "{what} entry {}·{} = {} is not killed by the generator orders",
                                label(left, i),
                                label(right, j),
                                target.show(e)
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(check.done())
}

fn sign_rule(p: &KProfile) -> Result<CheckResult> {
    let mut check = Check::new("sign-rule");
    for a in 0..2 {
        for b in 0..2 {
            let target = &p.red[(a + b) % 2];
            for i in 0..p.red[a].ngens() {
                for j in 0..p.red[b].ngens() {
                    let xy = p.ring[a][b].get(i, j);
                    let yx = p.ring[b][a].get(j, i);
                    let expected = target.scale(sign(a * b), xy)?;
                    check.require(*yx == expected, || {
                        format!(
                            "{}·{} = {} but {}·{} = {} (degrees {a}, {b})",
                            label(&p.red[b], j),
                            label(&p.red[a], i),
                            target.show(yx),
                            label(&p.red[a], i),
                            label(&p.red[b], j),
                            target.show(xy)
                        )
                    });
                }
            }
        }
    }
    Ok(check.done())
}

fn gens(g: &AbelianGroup) -> impl Iterator<Item = (usize, Element)> + '_ {
    (0..g.ngens()).map(move |i| (i, g.gen(i)))
}

fn ring_associativity(p: &KProfile) -> Result<CheckResult> {
    let mut check = Check::new("ring-associativity");
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let yzs = gens(&p.red[b])
                    .map(|(_, y)| gens(&p.red[c]).map(|(_, z)| p.mult(b, &y, c, &z)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                for (i, x) in gens(&p.red[a]) {
                    for (j, y) in gens(&p.red[b]) {
                        let xy = p.mult(a, &x, b, &y)?;
                        for (k, z) in gens(&p.red[c]) {
                            let lhs = p.mult((a + b) % 2, &xy, c, &z)?;
                            let rhs = p.mult(a, &x, (b + c) % 2, &yzs[j][k])?;
                            check.require(lhs == rhs, || {
                                format!(
                                    "({}·{})·{} ≠ {}·({}·{})",
                                    label(&p.red[a], i),
                                    label(&p.red[b], j),
                                    label(&p.red[c], k),
                                    label(&p.red[a], i),
                                    label(&p.red[b], j),
                                    label(&p.red[c], k)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(check.done())
}

fn nilpotency(p: &KProfile) -> Result<CheckResult> {
    let mut check = Check::new("nilpotency");
    if !p.connected {
        return Ok(CheckResult {
            name: check.name.into(),
            passed: true,
            detail: "skipped: the space is not connected, so the reduced ring has idempotents".into(),
        });
    }
    let bound = p.red[0].ngens() + p.red[1].ngens() + 1;
    for d in 0..2 {
        for (i, z) in gens(&p.red[d]) {
            let mut power = z.clone();
            let mut deg = d;
            let mut k = 1;
            while !power.is_zero() && k < bound {
                power = p.mult(deg, &power, d, &z)?;
                deg = (deg + d) % 2;
                k += 1;
            }
            check.require(power.is_zero(), || format!("{}^{bound} ≠ 0", label(&p.red[d], i)));
        }
    }
    Ok(check.done())
}

fn action_associativity(p: &KProfile) -> Result<CheckResult> {
    let mut check = Check::new("action-associativity");
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let yms = gens(&p.red[b])
                    .map(|(_, y)| {
                        gens(&p.modn[c]).map(|(_, m)| p.act(b, &y, c, &m, Side::Left)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                for (i, x) in gens(&p.red[a]) {
                    for (j, y) in gens(&p.red[b]) {
                        let xy = p.mult(a, &x, b, &y)?;
                        for (k, m) in gens(&p.modn[c]) {
                            let lhs = p.act((a + b) % 2, &xy, c, &m, Side::Left)?;
                            let rhs = p.act(a, &x, (b + c) % 2, &yms[j][k], Side::Left)?;
                            check.require(lhs == rhs, || {
                                format!(
                                    "({}·{})·{} ≠ {}·({}·{})",
                                    label(&p.red[a], i),
                                    label(&p.red[b], j),
                                    label(&p.modn[c], k),
                                    label(&p.red[a], i),
                                    label(&p.red[b], j),
                                    label(&p.modn[c], k)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(check.done())
}

/// `ρ` and `β` against the action, on both sides. The right-hand Bockstein
/// identity carries the sign `β(b·x) = (-1)^{|x|} β(b)·x`; it is `+` for
/// `x` of degree 0.
fn compatibilities(p: &KProfile) -> Result<Vec<CheckResult>> {
    let mut rho_left = Check::new("rho-left");
    let mut rho_right = Check::new("rho-right");
    let mut beta_left = Check::new("beta-left");
    let mut beta_right = Check::new("beta-right");
    for a in 0..2 {
        for b in 0..2 {
            let r = (a + b) % 2;
            for (i, x) in gens(&p.red[a]) {
                for (j, y) in gens(&p.red[b]) {
                    let ry = p.rho[b].apply(&y)?;
                    let lhs = p.act(a, &x, b, &ry, Side::Left)?;
                    let rhs = p.rho[r].apply(&p.mult(a, &x, b, &y)?)?;
                    rho_left.require(lhs == rhs, || {
                        format!(
                            "{}·ρ({}) ≠ ρ({}·{})",
                            label(&p.red[a], i),
                            label(&p.red[b], j),
                            label(&p.red[a], i),
                            label(&p.red[b], j)
                        )
                    });
                    let lhs = p.act(a, &x, b, &ry, Side::Right)?;
                    let rhs = p.rho[r].apply(&p.mult(b, &y, a, &x)?)?;
                    rho_right.require(lhs == rhs, || {
                        format!(
                            "ρ({})·{} ≠ ρ({}·{})",
                            label(&p.red[b], j),
                            label(&p.red[a], i),
                            label(&p.red[b], j),
                            label(&p.red[a], i)
                        )
                    });
                }
                for (k, m) in gens(&p.modn[b]) {
                    let xm = p.act(a, &x, b, &m, Side::Left)?;
                    let lhs = p.beta[r].apply(&xm)?;
                    let rhs = p.mult(a, &x, (b + 1) % 2, &p.beta[b].apply(&m)?)?;
                    beta_left.require(lhs == rhs, || {
                        format!(
                            "β({}·{}) ≠ {}·β({})",
                            label(&p.red[a], i),
                            label(&p.modn[b], k),
                            label(&p.red[a], i),
                            label(&p.modn[b], k)
                        )
                    });
                    let mx = p.act(a, &x, b, &m, Side::Right)?;
                    let lhs = p.beta[r].apply(&mx)?;
                    let bm_x = p.mult((b + 1) % 2, &p.beta[b].apply(&m)?, a, &x)?;
                    let rhs = p.red[(r + 1) % 2].scale(sign(a), &bm_x)?;
                    beta_right.require(lhs == rhs, || {
                        format!(
                            "β({}·{}) ≠ ±β({})·{}",
                            label(&p.modn[b], k),
                            label(&p.red[a], i),
                            label(&p.modn[b], k),
                            label(&p.red[a], i)
                        )
                    });
                }
            }
        }
    }
    Ok(vec![rho_left.done(), rho_right.done(), beta_left.done(), beta_right.done()])
}
