//! Self-contained invariant suites over an arrangement, reported with pass
//! and failure counts. Backs the `check` CLI verb.

use crate::arrangement::Arrangement;
use crate::deligne::{deligne_nf, nf_validate};
use crate::error::Result;
use crate::paths::{complete_to_opposite, is_atom, minimal_paths, PositivePath, DEFAULT_CAP};
use crate::shadow::{orient, path_monotone};
use crate::skeleton::ChamberGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

/// Run every suite. Suites are bounded so the whole run stays fast even on
/// the 32-chamber generator.
pub fn run_all(arr: &Arrangement) -> Result<Vec<SuiteResult>> {
    let g = ChamberGraph::build(arr.clone())?;
    Ok(vec![
        chambers_suite(&g),
        skeleton_suite(&g),
        atoms_suite(&g),
        completion_suite(&g),
        order_suite(&g)?,
        normal_form_suite(&g)?,
    ])
}

fn tally(name: &'static str, checks: impl IntoIterator<Item = bool>) -> SuiteResult {
    let mut passed = 0;
    let mut failed = 0;
    for ok in checks {
        if ok {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    SuiteResult { name, passed, failed }
}

/// Sign vectors match exact re-evaluation at witnesses; wall count is the
/// dimension.
fn chambers_suite(g: &ChamberGraph) -> SuiteResult {
    let arr = g.arrangement();
    let checks: Vec<bool> = g
        .chambers()
        .iter()
        .map(|c| {
            let signs_ok = arr.hyperplanes().iter().zip(&c.signs).all(|(h, &s)| {
                let v = h.eval(&c.witness);
                (v.numer().sign() == num_bigint::Sign::Plus) == (s > 0)
            });
            signs_ok && c.walls.len() == arr.dim()
        })
        .collect();
    tally("chambers", checks)
}

/// Arrows come in inverse pairs and the distance matrix is a graph metric.
fn skeleton_suite(g: &ChamberGraph) -> SuiteResult {
    let n = g.chambers().len();
    let mut checks = Vec::new();
    for i in 0..n {
        for a in g.arrows_from(i) {
            let paired = g
                .arrows_from(a.target)
                .iter()
                .any(|b| b.target == i && b.hyperplane == a.hyperplane);
            checks.push(paired && g.distance(i, a.target) == 1);
        }
        for j in 0..n {
            let mut ok = g.distance(i, j) == g.distance(j, i);
            for k in 0..n {
                ok &= g.distance(i, j) <= g.distance(i, k) + g.distance(k, j);
            }
            checks.push(ok);
        }
    }
    tally("skeleton", checks)
}

/// Every literal minimal path is an atom of length equal to the distance.
fn atoms_suite(g: &ChamberGraph) -> SuiteResult {
    let n = g.chambers().len();
    let mut checks = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if g.distance(c, d) > 3 {
                continue;
            }
            for a in minimal_paths(g, c, d) {
                checks.push(
                    is_atom(g, a.path()) && a.len() == g.distance(c, d) as usize,
                );
            }
        }
    }
    tally("atoms", checks)
}

/// Each short atom completes to the opposite chamber through another atom.
fn completion_suite(g: &ChamberGraph) -> SuiteResult {
    let n = g.chambers().len();
    let mut checks = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if g.distance(c, d) == 0 || g.distance(c, d) > 2 {
                continue;
            }
            for a in minimal_paths(g, c, d) {
                checks.push(match complete_to_opposite(g, &a) {
                    Ok(comp) => {
                        let mut crossings = a.path().crossings().to_vec();
                        crossings.extend_from_slice(comp.path().crossings());
                        match PositivePath::new(g, a.path().start(), crossings) {
                            Ok(whole) => is_atom(g, &whole),
                            Err(_) => false,
                        }
                    }
                    Err(_) => false,
                });
            }
        }
    }
    tally("completion", checks)
}

/// The base-chamber order is acyclic and atoms from the base descend.
fn order_suite(g: &ChamberGraph) -> Result<SuiteResult> {
    let base = 0; // lex-first chamber id
    let os = orient(g, g.id(base))?;
    let n = g.chambers().len();
    let mut checks = Vec::new();
    // acyclicity by Kahn's algorithm
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (&(c, d), &up) in os.edges() {
        let down = if up == c { d } else { c };
        out[up].push(down);
        indeg[down] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    checks.push(seen == n);
    for d in 0..n {
        for a in minimal_paths(g, base, d) {
            checks.push(path_monotone(&os, a.path())?);
        }
    }
    Ok(tally("order", checks))
}

/// Normal forms of short paths validate and are equivalence invariants.
fn normal_form_suite(g: &ChamberGraph) -> Result<SuiteResult> {
    let base = 0;
    let mut checks = Vec::new();
    let mut frontier = vec![Vec::<usize>::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &frontier {
            let p = PositivePath::new(g, base, w.clone())?;
            let cur = p.target(g);
            for &h in &g.chamber(cur).walls {
                let mut longer = w.clone();
                longer.push(h);
                next.push(longer);
            }
        }
        for w in &next {
            let p = PositivePath::new(g, base, w.clone())?;
            let nf = deligne_nf(g, &p, DEFAULT_CAP)?;
            let total: usize = nf.factors.iter().map(|a| a.len()).sum();
            checks.push(total == p.len() && nf_validate(g, &nf, DEFAULT_CAP)?);
        }
        frontier = next;
    }
    Ok(tally("normal-form", checks))
}
