//! Positive paths in the chamber graph: atoms, the rewriting equivalence,
//! Begin/End sets at chamber and wall level, and opposite-completion.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::skeleton::ChamberGraph;

pub const DEFAULT_CAP: usize = 200_000;

/// A positive path: a start chamber and hyperplane crossings in time order.
/// (Concatenation here is written in time order; the groupoid composes the
/// other way round.)
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositivePath {
    start: usize,
    crossings: Vec<usize>,
}

impl PositivePath {
    /// Validates that each crossing is a wall of the chamber reached so far.
    pub fn new(g: &ChamberGraph, start: usize, crossings: Vec<usize>) -> Result<PositivePath> {
        let mut cur = start;
        for (step, &h) in crossings.iter().enumerate() {
            cur = g.step(cur, h).map_err(|e| match e {
                Error::NotAWall { chamber, hyperplane, .. } => {
                    Error::NotAWall { chamber, hyperplane, step }
                }
                other => other,
            })?;
        }
        Ok(PositivePath { start, crossings })
    }

    /// Parse the `<sign-string>:<h1>,<h2>,...` literal.
    pub fn parse(g: &ChamberGraph, literal: &str) -> Result<PositivePath> {
        let (id, rest) = literal.split_once(':').ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("path literal `{literal}` needs a `:`"),
        })?;
        let start = g.lookup(id)?;
        let crossings: Vec<usize> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|tok| {
                    tok.trim().parse().map_err(|_| Error::Parse {
                        line: 0,
                        message: format!("bad crossing `{tok}`"),
                    })
                })
                .collect::<Result<_>>()?
        };
        PositivePath::new(g, start, crossings)
    }

    pub fn literal(&self, g: &ChamberGraph) -> String {
        let list: Vec<String> = self.crossings.iter().map(|h| h.to_string()).collect();
        format!("{}:{}", g.id(self.start), list.join(","))
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn crossings(&self) -> &[usize] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Chamber sequence v_0, ..., v_l.
    pub fn trace(&self, g: &ChamberGraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.crossings.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for &h in &self.crossings {
            cur = g.step(cur, h).expect("validated path");
            out.push(cur);
        }
        out
    }

    pub fn target(&self, g: &ChamberGraph) -> usize {
        *self.trace(g).last().unwrap()
    }
}

/// An atom: a positive path of minimal length between its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    path: PositivePath,
}

impl Atom {
    pub fn new(g: &ChamberGraph, path: PositivePath) -> Result<Atom> {
        if !is_atom(g, &path) {
            return Err(Error::Parse {
                line: 0,
                message: format!("`{}` is not an atom", path.literal(g)),
            });
        }
        Ok(Atom { path })
    }

    pub fn path(&self) -> &PositivePath {
        &self.path
    }

    pub fn into_path(self) -> PositivePath {
        self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// Minimality test: no hyperplane crossed twice (and, equivalently, length
/// equals gallery distance; the constructor asserts both agree).
pub fn is_atom(g: &ChamberGraph, p: &PositivePath) -> bool {
    let distinct = {
        let mut seen = BTreeSet::new();
        p.crossings.iter().all(|&h| seen.insert(h))
    };
    let by_distance = p.len() as u32 == g.distance(p.start, p.target(g));
    debug_assert_eq!(distinct, by_distance, "atom criteria must agree");
    distinct
}

/// All minimal positive paths from `c` to `d`, lexicographic by crossing list.
pub fn minimal_paths(g: &ChamberGraph, c: usize, d: usize) -> Vec<Atom> {
    g.minimal_paths(c, d)
        .into_iter()
        .map(|crossings| Atom { path: PositivePath { start: c, crossings } })
        .collect()
}

/// BFS closure of `{p}` under swapping a contiguous atomic subpath for any
/// other literal minimal path with the same endpoints.
pub fn equivalence_class(
    g: &ChamberGraph,
    p: &PositivePath,
    cap: usize,
) -> Result<BTreeSet<Vec<usize>>> {
    let start = p.start;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    seen.insert(p.crossings.clone());
    queue.push_back(p.crossings.clone());
    while let Some(word) = queue.pop_front() {
        let path = PositivePath { start, crossings: word.clone() };
        let chambers = path.trace(g);
        for i in 0..word.len() {
            for j in (i + 2)..=word.len() {
                let (u, v) = (chambers[i], chambers[j]);
                if (j - i) as u32 != g.distance(u, v) {
                    continue; // subpath is not minimal, hence not an atom
                }
                for replacement in g.minimal_paths(u, v) {
                    if replacement == word[i..j] {
                        continue;
                    }
                    let mut next = Vec::with_capacity(word.len());
                    next.extend_from_slice(&word[..i]);
                    next.extend_from_slice(&replacement);
                    next.extend_from_slice(&word[j..]);
                    if seen.insert(next.clone()) {
                        if seen.len() > cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Does `p` begin with the atom `a`? True iff some member of the class of
/// `p` reaches `t(a)` after exactly `l(a)` crossings (such a prefix has
/// length equal to the gallery distance, hence is itself an atom).
pub fn begins_with(g: &ChamberGraph, p: &PositivePath, a: &Atom, cap: usize) -> Result<bool> {
    if p.start != a.path.start {
        return Err(Error::EndpointMismatch);
    }
    let target = a.path.target(g);
    let at = a.len();
    let class = equivalence_class(g, p, cap)?;
    Ok(class.iter().any(|word| {
        let path = PositivePath { start: p.start, crossings: word.clone() };
        path.trace(g)[at] == target
    }))
}

/// Chambers reachable as the target of an atom with which `p` begins.
pub fn begin_chambers(g: &ChamberGraph, p: &PositivePath, cap: usize) -> Result<BTreeSet<usize>> {
    let class = equivalence_class(g, p, cap)?;
    let mut out = BTreeSet::new();
    for word in &class {
        let path = PositivePath { start: p.start, crossings: word.clone() };
        for (pos, &v) in path.trace(g).iter().enumerate() {
            if pos as u32 == g.distance(p.start, v) {
                out.insert(v);
            }
        }
    }
    Ok(out)
}

/// Chambers that are the source of an atom with which `p` ends.
pub fn end_chambers(g: &ChamberGraph, p: &PositivePath, cap: usize) -> Result<BTreeSet<usize>> {
    let class = equivalence_class(g, p, cap)?;
    let target = p.target(g);
    let len = p.len();
    let mut out = BTreeSet::new();
    for word in &class {
        let path = PositivePath { start: p.start, crossings: word.clone() };
        for (pos, &v) in path.trace(g).iter().enumerate() {
            if (len - pos) as u32 == g.distance(v, target) {
                out.insert(v);
            }
        }
    }
    Ok(out)
}

/// A subset of one chamber's facet hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSet {
    pub chamber: usize,
    pub walls: BTreeSet<usize>,
}

/// Walls of `s(p)` whose single crossing begins `p`.
pub fn begin_walls(g: &ChamberGraph, p: &PositivePath, cap: usize) -> Result<WallSet> {
    if p.is_empty() {
        return Err(Error::EmptyPath);
    }
    let begins = begin_chambers(g, p, cap)?;
    let s = p.start;
    let walls = g
        .chamber(s)
        .walls
        .iter()
        .copied()
        .filter(|&h| begins.contains(&g.step(s, h).expect("wall")))
        .collect();
    Ok(WallSet { chamber: s, walls })
}

/// Walls of `t(p)` whose single crossing ends `p`.
pub fn end_walls(g: &ChamberGraph, p: &PositivePath, cap: usize) -> Result<WallSet> {
    if p.is_empty() {
        return Err(Error::EmptyPath);
    }
    let ends = end_chambers(g, p, cap)?;
    let t = p.target(g);
    let walls = g
        .chamber(t)
        .walls
        .iter()
        .copied()
        .filter(|&h| ends.contains(&g.step(t, h).expect("wall")))
        .collect();
    Ok(WallSet { chamber: t, walls })
}

/// For an atom `p`, an atom `p'` from the chamber opposite `t(p)` to `s(p)`
/// such that `p'` followed by `p` is again an atom.
pub fn complete_to_opposite(g: &ChamberGraph, p: &Atom) -> Result<Atom> {
    let t = p.path.target(g);
    let s = p.path.start;
    let opp = g.opposite(t);
    let used: BTreeSet<usize> = p.path.crossings.iter().copied().collect();
    for candidate in g.minimal_paths(opp, s) {
        if candidate.iter().any(|h| used.contains(h)) {
            continue;
        }
        let mut crossings = candidate.clone();
        crossings.extend_from_slice(&p.path.crossings);
        let composite = PositivePath::new(g, opp, crossings)?;
        if is_atom(g, &composite) {
            return Ok(Atom { path: PositivePath { start: opp, crossings: candidate } });
        }
    }
    // Guaranteed to exist over a simplicial arrangement.
    Err(Error::NoGreedyAtom)
}

/// Atoms `p`, `q` from `-t(a)` with `a . p ~ b . q`, witnessing the fraction
/// identity `b^-1 a = q p^-1`.
pub fn fraction_form(g: &ChamberGraph, a: &Atom, b: &Atom) -> Result<(Atom, Atom)> {
    if a.path.target(g) != b.path.target(g) {
        return Err(Error::EndpointMismatch);
    }
    let p = complete_to_opposite(g, a)?;
    let q = complete_to_opposite(g, b)?;
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;

    fn graph(name: &str) -> ChamberGraph {
        ChamberGraph::build(Arrangement::generator(name).unwrap()).unwrap()
    }

    fn path(g: &ChamberGraph, literal: &str) -> PositivePath {
        PositivePath::parse(g, literal).unwrap()
    }

    /// The length-10 path of the worked normal-form example.
    const EX_2_12: &str = "++++:0,2,3,3,2,2,3,1,0,2";

    #[test]
    fn trace_examples() {
        let g = graph("example-2-6");
        let p = path(&g, "++++:0,2,3,1");
        let ids: Vec<&str> = p.trace(&g).iter().map(|&i| g.id(i)).collect();
        assert_eq!(ids, ["++++", "-+++", "-+-+", "-+--", "----"]);
        let empty = path(&g, "++++:");
        assert_eq!(empty.trace(&g).len(), 1);
        match PositivePath::parse(&g, "++++:2,0") {
            Err(Error::NotAWall { step, hyperplane, .. }) => {
                assert_eq!((step, hyperplane), (0, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn atom_criterion() {
        let g = graph("example-2-6");
        assert!(!is_atom(&g, &path(&g, EX_2_12)));
        assert!(is_atom(&g, &path(&g, "++++:0")));
        assert!(is_atom(&g, &path(&g, "++++:0,2,3,1")));
    }

    #[test]
    fn minimal_path_counts() {
        let g = graph("example-2-6");
        let plus = g.lookup("++++").unwrap();
        let minus = g.lookup("----").unwrap();
        assert_eq!(minimal_paths(&g, plus, minus).len(), 2);
        assert_eq!(minimal_paths(&g, plus, plus).len(), 1);
        assert!(minimal_paths(&g, plus, plus)[0].is_empty());
        let c1 = g.lookup("-+++").unwrap();
        let atoms = minimal_paths(&g, plus, c1);
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].path().crossings(), &[0]);
    }

    #[test]
    fn class_of_atom_is_minimal_paths() {
        let g = graph("example-2-6");
        let plus = g.lookup("++++").unwrap();
        let minus = g.lookup("----").unwrap();
        let a = path(&g, "++++:0,2,3,1");
        let class = equivalence_class(&g, &a, DEFAULT_CAP).unwrap();
        let expect: BTreeSet<Vec<usize>> = g.minimal_paths(plus, minus).into_iter().collect();
        assert_eq!(class, expect);
        let zero = path(&g, "++++:");
        assert_eq!(equivalence_class(&g, &zero, DEFAULT_CAP).unwrap().len(), 1);
    }

    #[test]
    fn class_members_share_endpoints_and_length() {
        let g = graph("example-2-6");
        let p = path(&g, EX_2_12);
        let class = equivalence_class(&g, &p, DEFAULT_CAP).unwrap();
        assert!(class.len() > 1);
        let target = p.target(&g);
        for word in &class {
            let q = PositivePath::new(&g, p.start(), word.clone()).unwrap();
            assert_eq!(q.len(), p.len());
            assert_eq!(q.target(&g), target);
        }
    }

    #[test]
    fn cap_is_honoured() {
        let g = graph("example-2-6");
        let p = path(&g, EX_2_12);
        assert_eq!(equivalence_class(&g, &p, 1), Err(Error::CapExceeded(1)));
    }

    #[test]
    fn begins_with_full_atom() {
        let g = graph("example-2-6");
        let p = path(&g, EX_2_12);
        let full = Atom::new(&g, path(&g, "++++:0,2,3,1")).unwrap();
        assert!(begins_with(&g, &p, &full, DEFAULT_CAP).unwrap());
        // the single crossing into C6 across theta_2
        let c6 = Atom::new(&g, path(&g, "++++:1")).unwrap();
        assert!(begins_with(&g, &p, &c6, DEFAULT_CAP).unwrap());
        let empty = Atom::new(&g, path(&g, "++++:")).unwrap();
        assert!(begins_with(&g, &p, &empty, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn begin_chambers_of_atom_matches_nesting() {
        let g = graph("example-2-6");
        for c in 0..g.chambers().len() {
            for d in 0..g.chambers().len() {
                for a in minimal_paths(&g, c, d) {
                    let begins = begin_chambers(&g, a.path(), DEFAULT_CAP).unwrap();
                    let sep_cd: BTreeSet<usize> = g.separating_set(c, d).into_iter().collect();
                    let by_nesting: BTreeSet<usize> = (0..g.chambers().len())
                        .filter(|&e| {
                            g.separating_set(c, e).iter().all(|h| sep_cd.contains(h))
                        })
                        .collect();
                    assert_eq!(begins, by_nesting);
                }
            }
        }
    }

    #[test]
    fn begin_and_end_walls_of_worked_example() {
        let g = graph("example-2-6");
        let p = path(&g, EX_2_12);
        let bw = begin_walls(&g, &p, DEFAULT_CAP).unwrap();
        assert_eq!(bw.walls, BTreeSet::from([0, 1]));
        // The subpath between the antipodal pair -+-+ and +-+- can be rerouted
        // the long way round the 8-cycle, so a representative ends across
        // wall 3 as well as wall 2. (The last normal-form factor still ends
        // only with wall 2; see the deligne module.)
        let ew = end_walls(&g, &p, DEFAULT_CAP).unwrap();
        assert_eq!(ew.walls, BTreeSet::from([2, 3]));
        let single = path(&g, "++++:0");
        assert_eq!(begin_walls(&g, &single, DEFAULT_CAP).unwrap().walls, BTreeSet::from([0]));
        assert_eq!(end_walls(&g, &single, DEFAULT_CAP).unwrap().walls, BTreeSet::from([0]));
        assert_eq!(begin_walls(&g, &path(&g, "++++:"), DEFAULT_CAP), Err(Error::EmptyPath));
    }

    #[test]
    fn begins_with_single_crossing_iff_begin_wall() {
        let g = graph("example-2-6");
        let p = path(&g, EX_2_12);
        let bw = begin_walls(&g, &p, DEFAULT_CAP).unwrap();
        for &h in &g.chamber(p.start()).walls.clone() {
            let one = Atom::new(&g, PositivePath::new(&g, p.start(), vec![h]).unwrap()).unwrap();
            assert_eq!(
                begins_with(&g, &p, &one, DEFAULT_CAP).unwrap(),
                bw.walls.contains(&h)
            );
        }
    }

    #[test]
    fn complete_single_crossing() {
        let g = graph("example-2-6");
        let a = Atom::new(&g, path(&g, "++++:0")).unwrap();
        let comp = complete_to_opposite(&g, &a).unwrap();
        assert_eq!(comp.len(), 3);
        assert_eq!(g.id(comp.path().start()), "+---"); // -C1
        assert_eq!(g.id(comp.path().target(&g)), "++++");
        // composite is an atom of length 4
        let mut crossings = comp.path().crossings().to_vec();
        crossings.extend_from_slice(a.path().crossings());
        let composite = PositivePath::new(&g, comp.path().start(), crossings).unwrap();
        assert!(is_atom(&g, &composite));
        assert_eq!(composite.len() as u32, g.distance(composite.start(), composite.target(&g)));
    }

    #[test]
    fn complete_empty_path() {
        let g = graph("example-2-6");
        let plus = g.lookup("++++").unwrap();
        let empty = Atom::new(&g, PositivePath::new(&g, plus, vec![]).unwrap()).unwrap();
        let comp = complete_to_opposite(&g, &empty).unwrap();
        assert_eq!(comp.path().start(), g.opposite(plus));
        assert_eq!(comp.path().target(&g), plus);
        assert_eq!(comp.len() as u32, g.distance(g.opposite(plus), plus));
    }

    #[test]
    fn every_atom_completes() {
        let g = graph("example-2-6");
        for c in 0..g.chambers().len() {
            for d in 0..g.chambers().len() {
                for a in minimal_paths(&g, c, d) {
                    let comp = complete_to_opposite(&g, &a).unwrap();
                    let mut crossings = comp.path().crossings().to_vec();
                    crossings.extend_from_slice(a.path().crossings());
                    let composite =
                        PositivePath::new(&g, comp.path().start(), crossings).unwrap();
                    assert!(is_atom(&g, &composite));
                    // the composite crosses the full separating set of -t..t
                    let full: BTreeSet<usize> = g
                        .separating_set(g.opposite(d), d)
                        .into_iter()
                        .collect();
                    let used: BTreeSet<usize> =
                        composite.crossings().iter().copied().collect();
                    assert_eq!(used, full);
                }
            }
        }
    }

    #[test]
    fn fraction_form_examples() {
        let g = graph("example-2-6");
        // a = b: identity fraction
        let a = Atom::new(&g, path(&g, "++++:0")).unwrap();
        let (p, q) = fraction_form(&g, &a, &a).unwrap();
        assert_eq!(p, q);
        // all pairs of length-1 atoms into C-
        let minus = g.lookup("----").unwrap();
        let mut inbound = Vec::new();
        for c in 0..g.chambers().len() {
            if g.distance(c, minus) == 1 {
                for atom in minimal_paths(&g, c, minus) {
                    inbound.push(atom);
                }
            }
        }
        assert!(!inbound.is_empty());
        for a in &inbound {
            for b in &inbound {
                let (p, q) = fraction_form(&g, a, b).unwrap();
                // composites a.p and b.q are equivalent atoms
                let mut ap = p.path().crossings().to_vec();
                ap.extend_from_slice(a.path().crossings());
                let mut bq = q.path().crossings().to_vec();
                bq.extend_from_slice(b.path().crossings());
                let ap = PositivePath::new(&g, p.path().start(), ap).unwrap();
                let bq = PositivePath::new(&g, q.path().start(), bq).unwrap();
                assert!(is_atom(&g, &ap) && is_atom(&g, &bq));
                assert_eq!(ap.start(), bq.start());
                assert_eq!(ap.target(&g), bq.target(&g));
                let class = equivalence_class(&g, &ap, DEFAULT_CAP).unwrap();
                assert!(class.contains(bq.crossings()));
            }
        }
    }

    #[test]
    fn three_way_atom_agreement_short_paths() {
        // distinct crossings <=> length == distance, all paths of length <= 4
        let g = graph("example-2-6");
        for start in 0..g.chambers().len() {
            let mut stack = vec![Vec::<usize>::new()];
            while let Some(word) = stack.pop() {
                let p = PositivePath::new(&g, start, word.clone()).unwrap();
                let distinct = {
                    let mut seen = BTreeSet::new();
                    word.iter().all(|&h| seen.insert(h))
                };
                let by_dist = p.len() as u32 == g.distance(start, p.target(&g));
                assert_eq!(distinct, by_dist, "{}", p.literal(&g));
                assert_eq!(is_atom(&g, &p), distinct);
                if word.len() < 4 {
                    let cur = p.target(&g);
                    for &h in &g.chamber(cur).walls {
                        let mut next = word.clone();
                        next.push(h);
                        stack.push(next);
                    }
                }
            }
        }
    }
}
