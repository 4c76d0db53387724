//! Combinatorial shadows of the tilting order: the base-chamber order on the
//! 1-skeleton, torsion-pair membership of simples per atom, the shift rule,
//! and the degree recursion with its faithfulness signature.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::deligne::{deligne_nf, DeligneNF};
use crate::error::{Error, Result};
use crate::paths::{begin_walls, end_walls, equivalence_class, Atom, PositivePath};
use crate::skeleton::ChamberGraph;

/// The 1-skeleton with every edge oriented from greater to smaller chamber
/// in the base-chamber order.
#[derive(Debug)]
pub struct OrderedSkeleton<'a> {
    g: &'a ChamberGraph,
    base: usize,
    /// greater endpoint per undirected edge, keyed (min index, max index)
    greater: std::collections::HashMap<(usize, usize), usize>,
}

/// Orient each edge toward the base: the greater endpoint of an edge on
/// hyperplane `h` is the one on the base witness's side of `h`, decided by
/// exact evaluation of the form at the witnesses.
pub fn orient<'a>(g: &'a ChamberGraph, base_id: &str) -> Result<OrderedSkeleton<'a>> {
    let base = g.lookup(base_id)?;
    let mut greater = std::collections::HashMap::new();
    for i in 0..g.chambers().len() {
        for a in g.arrows_from(i) {
            if i > a.target {
                continue;
            }
            let form = &g.arrangement().hyperplanes()[a.hyperplane];
            let base_side = form.eval(&g.chamber(base).witness);
            let i_side = form.eval(&g.chamber(i).witness);
            debug_assert!(!base_side.numer().sign().eq(&num_bigint::Sign::NoSign));
            let up = if base_side.numer().sign() == i_side.numer().sign() {
                i
            } else {
                a.target
            };
            greater.insert((i, a.target), up);
        }
    }
    Ok(OrderedSkeleton { g, base, greater })
}

impl OrderedSkeleton<'_> {
    pub fn base(&self) -> usize {
        self.base
    }

    /// Greater endpoint of the edge {c, d}; panics if not an edge.
    pub fn greater(&self, c: usize, d: usize) -> usize {
        self.greater[&(c.min(d), c.max(d))]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &usize)> {
        self.greater.iter()
    }

    /// Graphviz rendering: directed edges from greater to smaller chamber.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph order {\n");
        for c in self.g.chambers() {
            out.push_str(&format!("  \"{}\";\n", c.id));
        }
        let mut lines: Vec<String> = Vec::new();
        for (&(c, d), &up) in &self.greater {
            let down = if up == c { d } else { c };
            let h = self
                .g
                .arrows_from(c)
                .iter()
                .find(|a| a.target == d)
                .expect("edge")
                .hyperplane;
            lines.push(format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.g.id(up),
                self.g.id(down),
                h
            ));
        }
        lines.sort();
        for l in lines {
            out.push_str(&l);
        }
        out.push_str("}\n");
        out
    }
}

/// True iff every step of `p` moves from greater to smaller chamber.
pub fn path_monotone(os: &OrderedSkeleton<'_>, p: &PositivePath) -> Result<bool> {
    if p.start() != os.base {
        return Err(Error::WrongStart {
            base: os.g.id(os.base).to_string(),
            got: os.g.id(p.start()).to_string(),
        });
    }
    let trace = p.trace(os.g);
    for step in trace.windows(2) {
        if os.greater(step[0], step[1]) != step[0] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Torsion-pair membership of the simples attached to an atom: per wall of
/// the source, torsion (T) or torsion-free (F); per wall of the target,
/// shifted (X) or unshifted (Y). The index-0 simple is always (T, Y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleClass {
    pub source: usize,
    pub target: usize,
    /// walls of the source whose simple is torsion-free
    pub f_walls: BTreeSet<usize>,
    /// walls of the target whose simple is shifted
    pub x_walls: BTreeSet<usize>,
}

pub fn classify_simples(g: &ChamberGraph, a: &Atom, cap: usize) -> Result<SimpleClass> {
    let begins = begin_walls(g, a.path(), cap)?;
    let ends = end_walls(g, a.path(), cap)?;
    Ok(SimpleClass {
        source: begins.chamber,
        target: ends.chamber,
        f_walls: begins.walls,
        x_walls: ends.walls,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Simple {
    Zero,
    Wall(usize),
}

/// Homological shift picked up by the inverse tilt: 1 for shifted (X)
/// simples, 0 otherwise.
pub fn inverse_shift(g: &ChamberGraph, a: &Atom, simple: Simple, cap: usize) -> Result<u8> {
    match simple {
        Simple::Zero => Ok(0),
        Simple::Wall(h) => {
            let t = a.path().target(g);
            if !g.chamber(t).walls.contains(&h) {
                return Err(Error::InvalidSimple(h));
            }
            let ends = end_walls(g, a.path(), cap)?;
            Ok(u8::from(ends.walls.contains(&h)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub k: usize,
    pub d: usize,
    pub max_degree: usize,
    pub achieving_walls: BTreeSet<usize>,
}

/// Maximal nonvanishing degree for a normal form with parameter `d`, by the
/// literal peeling recursion, cross-checked against the closed form k + d.
pub fn degree_report(
    g: &ChamberGraph,
    nf: &DeligneNF,
    d: usize,
    cap: usize,
) -> Result<DegreeReport> {
    let k = nf.factors.len();
    if k == 0 {
        return Err(Error::EmptyPath);
    }
    let (max_degree, achieving_walls) = degree_rec(g, &nf.factors, d, cap)?;
    if max_degree != k + d {
        return Err(Error::RecursionMismatch(format!(
            "recursion gave {max_degree}, closed form {}",
            k + d
        )));
    }
    Ok(DegreeReport { k, d, max_degree, achieving_walls })
}

fn degree_rec(
    g: &ChamberGraph,
    factors: &[Atom],
    d: usize,
    cap: usize,
) -> Result<(usize, BTreeSet<usize>)> {
    let last = factors.last().expect("k >= 1");
    let ends = end_walls(g, last.path(), cap)?;
    if factors.len() == 1 {
        // base case: the shifted simples at the target live one degree up
        return Ok((d + 1, ends.walls));
    }
    let (m, _) = degree_rec(g, &factors[..factors.len() - 1], d, cap)?;
    if m != factors.len() - 1 + d {
        return Err(Error::RecursionMismatch(format!(
            "inner recursion gave {m} at {} factors",
            factors.len() - 1
        )));
    }
    // propagation: a wall beginning the last factor must end the previous one
    let begins = begin_walls(g, last.path(), cap)?;
    let prev_ends = end_walls(g, factors[factors.len() - 2].path(), cap)?;
    for j in &begins.walls {
        if !prev_ends.walls.contains(j) {
            return Err(Error::RecursionMismatch(format!(
                "wall {j} begins the last factor but does not end the previous"
            )));
        }
    }
    Ok((m + 1, ends.walls))
}

/// The faithfulness invariant: NF factor count and the End walls of the last
/// factor. Empty paths report (0, {}).
pub fn signature(
    g: &ChamberGraph,
    p: &PositivePath,
    cap: usize,
) -> Result<(usize, BTreeSet<usize>)> {
    if p.is_empty() {
        return Ok((0, BTreeSet::new()));
    }
    let nf = deligne_nf(g, p, cap)?;
    let last = nf.factors.last().expect("nonempty");
    Ok((nf.factors.len(), end_walls(g, last.path(), cap)?.walls))
}

/// Decide equivalence by the faithfulness induction: compare signatures and,
/// while they agree, strip a common final crossing and recurse.
pub fn peel_compare(
    g: &ChamberGraph,
    p: &PositivePath,
    q: &PositivePath,
    cap: usize,
) -> Result<bool> {
    if p.start() != q.start() || p.target(g) != q.target(g) {
        return Ok(false);
    }
    let sp = signature(g, p, cap)?;
    let sq = signature(g, q, cap)?;
    if sp != sq {
        return Ok(false);
    }
    if p.is_empty() && q.is_empty() {
        return Ok(true);
    }
    // signatures agree and are nonzero; both classes contain representatives
    // ending across the shared achieving wall
    let h = *sp.1.iter().next().expect("achieving walls nonempty for k >= 1");
    let p2 = strip_last(g, p, h, cap)?;
    let q2 = strip_last(g, q, h, cap)?;
    peel_compare(g, &p2, &q2, cap)
}

fn strip_last(
    g: &ChamberGraph,
    p: &PositivePath,
    h: usize,
    cap: usize,
) -> Result<PositivePath> {
    let class = equivalence_class(g, p, cap)?;
    let word = class
        .iter()
        .find(|w| *w.last().expect("nonempty") == h)
        .expect("achieving wall ends some representative");
    PositivePath::new(g, p.start(), word[..word.len() - 1].to_vec())
}
