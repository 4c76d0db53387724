//! Deligne normal form, the positive word problem, and bounded equality of
//! general groupoid words via right fractions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::paths::{
    begin_chambers, begin_walls, end_walls, equivalence_class, is_atom, minimal_paths, Atom,
    PositivePath,
};
use crate::skeleton::ChamberGraph;

/// Greedy factorization of a positive path into atoms, first factor first in
/// time. Each factor is the lexicographically least representative of its
/// equivalence class of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeligneNF {
    pub factors: Vec<Atom>,
    pub source: usize,
    pub target: usize,
}

impl DeligneNF {
    pub fn factor_lengths(&self) -> Vec<usize> {
        self.factors.iter().map(|a| a.len()).collect()
    }

    /// Endpoint pairs (source, target) per factor; the complete invariant.
    pub fn shape(&self, g: &ChamberGraph) -> Vec<(usize, usize)> {
        self.factors
            .iter()
            .map(|a| (a.path().start(), a.path().target(g)))
            .collect()
    }

    /// Text form: `<source-id> [h,h,...] <target-id> | ...` per factor.
    pub fn to_text(&self, g: &ChamberGraph) -> String {
        if self.factors.is_empty() {
            return format!("{} (empty)", g.id(self.source));
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|a| {
                let list: Vec<String> =
                    a.path().crossings().iter().map(|h| h.to_string()).collect();
                format!(
                    "{} [{}] {}",
                    g.id(a.path().start()),
                    list.join(","),
                    g.id(a.path().target(g))
                )
            })
            .collect();
        parts.join(" | ")
    }

    pub fn to_json(&self, g: &ChamberGraph) -> serde_json::Value {
        #[derive(Serialize)]
        struct FactorOut<'a> {
            crossings: &'a [usize],
            source: &'a str,
            target: &'a str,
        }
        let factors: Vec<FactorOut> = self
            .factors
            .iter()
            .map(|a| FactorOut {
                crossings: a.path().crossings(),
                source: g.id(a.path().start()),
                target: g.id(a.path().target(g)),
            })
            .collect();
        serde_json::json!({
            "source": g.id(self.source),
            "target": g.id(self.target),
            "factors": factors,
        })
    }
}

/// Deligne normal form of a positive path: repeatedly strip the unique
/// maximal first atom (the one whose Begin set equals the path's).
pub fn deligne_nf(g: &ChamberGraph, p: &PositivePath, cap: usize) -> Result<DeligneNF> {
    let source = p.start();
    let target = p.target(g);
    let mut factors = Vec::new();
    let mut rest = p.clone();
    while !rest.is_empty() {
        let begins = begin_chambers(g, &rest, cap)?;
        // Greedy first factor: the unique chamber whose atom has the same
        // Begin set as the remaining path.
        let mut greedy = None;
        for &d in &begins {
            let atom = canonical_atom(g, rest.start(), d);
            let atom_begins = begin_chambers(g, atom.path(), cap)?;
            if atom_begins == begins {
                if greedy.is_some() {
                    return Err(Error::NoGreedyAtom);
                }
                greedy = Some((d, atom));
            }
        }
        let Some((d, atom)) = greedy else {
            return Err(Error::NoGreedyAtom);
        };
        // Strip: pick a class member whose prefix of the right length
        // literally reaches d, and drop that prefix.
        let cut = g.distance(rest.start(), d) as usize;
        let class = equivalence_class(g, &rest, cap)?;
        let member = class
            .iter()
            .find(|word| {
                let path = PositivePath::new(g, rest.start(), (*word).clone()).unwrap();
                path.trace(g)[cut] == d
            })
            .expect("begin chamber is witnessed by some class member");
        rest = PositivePath::new(g, d, member[cut..].to_vec())?;
        factors.push(atom);
    }
    Ok(DeligneNF { factors, source, target })
}

/// The lexicographically least atom from `c` to `d`.
fn canonical_atom(g: &ChamberGraph, c: usize, d: usize) -> Atom {
    minimal_paths(g, c, d).into_iter().next().expect("gallery-connected")
}

/// Structural validity: endpoint chaining, atomicity, and local normality
/// (every wall beginning a factor must end the previous factor).
pub fn nf_validate(g: &ChamberGraph, nf: &DeligneNF, cap: usize) -> Result<bool> {
    let mut cur = nf.source;
    for a in &nf.factors {
        if a.path().start() != cur {
            return Ok(false);
        }
        if !is_atom(g, a.path()) {
            return Ok(false);
        }
        cur = a.path().target(g);
    }
    if cur != nf.target {
        return Ok(false);
    }
    for pair in nf.factors.windows(2) {
        let prev_ends = end_walls(g, pair[0].path(), cap)?;
        let next_begins = begin_walls(g, pair[1].path(), cap)?;
        if !next_begins.walls.is_subset(&prev_ends.walls) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Positive word problem: equivalent iff the normal forms have the same
/// factor endpoints (equal-endpoint atoms are equivalent).
pub fn word_problem(
    g: &ChamberGraph,
    p: &PositivePath,
    q: &PositivePath,
    cap: usize,
) -> Result<bool> {
    if p.start() != q.start() || p.target(g) != q.target(g) {
        return Ok(false);
    }
    let np = deligne_nf(g, p, cap)?;
    let nq = deligne_nf(g, q, cap)?;
    Ok(np.shape(g) == nq.shape(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Prepend,
    Append,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Atom(Atom),
    NotAtom,
}

/// Extend an atom by one wall crossing at either end; an atom results iff
/// the wall is outside the relevant Begin/End set.
pub fn extend_atom(
    g: &ChamberGraph,
    a: &Atom,
    h: usize,
    side: Side,
    cap: usize,
) -> Result<Extension> {
    match side {
        Side::Prepend => {
            let s = a.path().start();
            let from = g.step(s, h)?; // NotAWall if h is not a facet of s
            if !a.is_empty() && begin_walls(g, a.path(), cap)?.walls.contains(&h) {
                return Ok(Extension::NotAtom);
            }
            let mut crossings = vec![h];
            crossings.extend_from_slice(a.path().crossings());
            let path = PositivePath::new(g, from, crossings)?;
            debug_assert!(is_atom(g, &path));
            Ok(Extension::Atom(Atom::new(g, path)?))
        }
        Side::Append => {
            let t = a.path().target(g);
            g.step(t, h)?;
            if !a.is_empty() && end_walls(g, a.path(), cap)?.walls.contains(&h) {
                return Ok(Extension::NotAtom);
            }
            let mut crossings = a.path().crossings().to_vec();
            crossings.push(h);
            let path = PositivePath::new(g, a.path().start(), crossings)?;
            debug_assert!(is_atom(g, &path));
            Ok(Extension::Atom(Atom::new(g, path)?))
        }
    }
}

/// A groupoid word: wall crossings with exponents, in time order from `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidWord {
    pub base: usize,
    pub letters: Vec<(usize, i8)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual,
    Inconclusive,
}

/// Right fraction `q . p^-1`: positive paths with a common source.
#[derive(Debug, Clone)]
struct Fraction {
    /// positive path from the common source to the word's base
    denom: PositivePath,
    /// positive path from the common source to the word's endpoint
    numer: PositivePath,
}

impl GroupoidWord {
    /// Endpoint of the word, following letters in time order.
    pub fn endpoint(&self, g: &ChamberGraph) -> Result<usize> {
        let mut cur = self.base;
        for &(h, _) in &self.letters {
            cur = g.step(cur, h)?;
        }
        Ok(cur)
    }
}

/// Rewrite a groupoid word into a right fraction of positive paths. Each
/// inverse letter is cleared by searching a positive right-multiplier that
/// makes the numerator end with that crossing; `None` if the bounded search
/// fails.
fn to_fraction(
    g: &ChamberGraph,
    w: &GroupoidWord,
    bound: usize,
    cap: usize,
) -> Result<Option<Fraction>> {
    let mut denom = PositivePath::new(g, w.base, vec![])?;
    let mut numer = PositivePath::new(g, w.base, vec![])?;
    for &(h, exp) in &w.letters {
        let cur = numer.target(g);
        let next = g.step(cur, h)?;
        if exp > 0 {
            let mut crossings = numer.crossings().to_vec();
            crossings.push(h);
            numer = PositivePath::new(g, numer.start(), crossings)?;
        } else {
            // Need numer . r ~ (crossing h) . rest; search r by length.
            let Some((r, stripped)) = clear_inverse(g, &numer, h, next, bound, cap)? else {
                return Ok(None);
            };
            let mut d = r.clone();
            d.extend_from_slice(denom.crossings());
            let start = if r.is_empty() { denom.start() } else { trace_back_start(g, &numer, &r) };
            denom = PositivePath::new(g, start, d)?;
            numer = stripped;
        }
    }
    Ok(Some(Fraction { denom, numer }))
}

/// Start chamber of the extension `r` (a crossing list ending at the current
/// common source of the fraction).
fn trace_back_start(g: &ChamberGraph, numer: &PositivePath, r: &[usize]) -> usize {
    // r is a path into numer.start(); walk backwards from there.
    let mut cur = numer.start();
    for &h in r.iter().rev() {
        cur = g.step(cur, h).expect("validated extension");
    }
    cur
}

/// Find a crossing list `r` (a positive path ending at `numer`'s source) such
/// that `numer` extended by `r` in front has an equivalent representative
/// whose final crossing is `h` into `target_of_h`; returns `r` and the
/// representative with that last crossing removed.
fn clear_inverse(
    g: &ChamberGraph,
    numer: &PositivePath,
    h: usize,
    step_back: usize,
    bound: usize,
    cap: usize,
) -> Result<Option<(Vec<usize>, PositivePath)>> {
    // candidates: reversed walks of length l ending at numer.start()
    let source = numer.start();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _len in 0..=bound {
        for r in &frontier {
            let start = trace_back_start(g, numer, r);
            let mut crossings = r.clone();
            crossings.extend_from_slice(numer.crossings());
            let extended = PositivePath::new(g, start, crossings)?;
            if extended.is_empty() {
                continue;
            }
            let class = equivalence_class(g, &extended, cap)?;
            for word in &class {
                if *word.last().unwrap() == h {
                    let member = PositivePath::new(g, start, word.clone())?;
                    if member.trace(g)[word.len() - 1] == step_back {
                        let stripped =
                            PositivePath::new(g, start, word[..word.len() - 1].to_vec())?;
                        return Ok(Some((r.clone(), stripped)));
                    }
                }
            }
        }
        // extend all frontier walks one step backwards
        let mut next = Vec::new();
        for r in &frontier {
            let start = trace_back_start(g, numer, r);
            for &w in &g.chamber(start).walls {
                let mut longer = vec![w];
                longer.extend_from_slice(r);
                next.push(longer);
            }
        }
        frontier = next;
        let _ = source;
    }
    Ok(None)
}

/// Bounded equality of groupoid words by common-denominator search.
pub fn groupoid_equal(
    g: &ChamberGraph,
    w1: &GroupoidWord,
    w2: &GroupoidWord,
    bound: usize,
    cap: usize,
) -> Result<Verdict> {
    if w1.base != w2.base {
        return Ok(Verdict::NotEqual);
    }
    let end1 = w1.endpoint(g)?;
    let end2 = w2.endpoint(g)?;
    if end1 != end2 {
        return Ok(Verdict::NotEqual);
    }
    let Some(f1) = to_fraction(g, w1, bound, cap)? else {
        return Ok(Verdict::Inconclusive);
    };
    let Some(f2) = to_fraction(g, w2, bound, cap)? else {
        return Ok(Verdict::Inconclusive);
    };
    // Search positive right-multipliers r1, r2 with matching sources that
    // equalize the denominators; then equality is decided by the numerators.
    let mut cands1: Vec<Vec<usize>> = vec![Vec::new()];
    for _l1 in 0..=bound {
        for r1 in &cands1 {
            let d1 = extend_front(g, &f1.denom, r1)?;
            let n1 = extend_front(g, &f1.numer, r1)?;
            let mut cands2: Vec<Vec<usize>> = vec![Vec::new()];
            for _l2 in 0..=bound {
                for r2 in &cands2 {
                    let d2 = extend_front(g, &f2.denom, r2)?;
                    if d1.start() != d2.start() || d1.len() != d2.len() {
                        continue;
                    }
                    if word_problem(g, &d1, &d2, cap)? {
                        let n2 = extend_front(g, &f2.numer, r2)?;
                        return Ok(if word_problem(g, &n1, &n2, cap)? {
                            Verdict::Equal
                        } else {
                            Verdict::NotEqual
                        });
                    }
                }
                cands2 = grow_back(g, &f2.denom, cands2);
            }
        }
        cands1 = grow_back(g, &f1.denom, cands1);
    }
    Ok(Verdict::Inconclusive)
}

fn extend_front(g: &ChamberGraph, p: &PositivePath, r: &[usize]) -> Result<PositivePath> {
    let start = trace_back_start(g, p, r);
    let mut crossings = r.to_vec();
    crossings.extend_from_slice(p.crossings());
    PositivePath::new(g, start, crossings)
}

fn grow_back(g: &ChamberGraph, p: &PositivePath, cands: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut next = Vec::new();
    for r in &cands {
        let start = trace_back_start(g, p, r);
        for &w in &g.chamber(start).walls {
            let mut longer = vec![w];
            longer.extend_from_slice(r);
            next.push(longer);
        }
    }
    next
}

/// Convenience: groupoid word from a positive path.
pub fn positive_word(p: &PositivePath) -> GroupoidWord {
    GroupoidWord {
        base: p.start(),
        letters: p.crossings().iter().map(|&h| (h, 1)).collect(),
    }
}
