//! Exact central hyperplane arrangements: canonical hyperplanes, chamber
//! enumeration with rational interior witnesses, essentiality and
//! simpliciality, opposite chambers, and the built-in example generators.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cone::extreme_rays;
use crate::error::{Error, Result};
use crate::linalg::{primitive, rank, Int, Rat};
use crate::lp;

/// A linear hyperplane `{x : normal . x = 0}`, stored as a primitive integer
/// normal with positive leading nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Int>,
}

impl Hyperplane {
    /// Canonical representative of the hyperplane with the given linear form.
    pub fn canonicalize(coeffs: &[Rat]) -> Result<Hyperplane> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroNormal);
        }
        let mut normal = primitive(coeffs);
        let lead = normal.iter().find(|x| !x.is_zero()).unwrap();
        if lead.is_negative() {
            for x in &mut normal {
                *x = -&*x;
            }
        }
        Ok(Hyperplane { normal })
    }

    pub fn normal(&self) -> &[Int] {
        &self.normal
    }

    /// Exact value of the linear form at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.normal
            .iter()
            .zip(point)
            .map(|(c, x)| Rat::from_integer(c.clone()) * x)
            .sum()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Sign of a chamber on one hyperplane; chambers are open, so never zero.
pub type Sign = i8;

pub fn signs_to_id(signs: &[Sign]) -> String {
    signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

pub fn id_to_signs(id: &str) -> Result<Vec<Sign>> {
    id.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(Error::UnknownChamber(format!("bad sign char `{other}`"))),
        })
        .collect()
}

/// An open chamber of the complement, identified by its sign vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub id: String,
    pub signs: Vec<Sign>,
    pub witness: Vec<Rat>,
    pub walls: BTreeSet<usize>,
}

/// A finite central arrangement in `R^n` with cached structural flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    essential: bool,
    simplicial: bool,
}

impl Arrangement {
    pub fn new(dim: usize, forms: Vec<Vec<Rat>>) -> Result<Arrangement> {
        if dim == 0 || forms.is_empty() {
            return Err(Error::DegenerateArrangement);
        }
        let mut hyperplanes = Vec::with_capacity(forms.len());
        for coeffs in &forms {
            if coeffs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: coeffs.len() });
            }
            let h = Hyperplane::canonicalize(coeffs)?;
            if let Some(first) = hyperplanes.iter().position(|x| *x == h) {
                return Err(Error::DuplicateHyperplane { index: hyperplanes.len(), first });
            }
            hyperplanes.push(h);
        }
        let mut arr = Arrangement { dim, hyperplanes, essential: false, simplicial: false };
        arr.essential = arr.compute_essential();
        arr.simplicial = arr.compute_simplicial();
        Ok(arr)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // m >= 1 by construction
    }

    pub fn is_essential(&self) -> bool {
        self.essential
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    fn compute_essential(&self) -> bool {
        let rows: Vec<Vec<Rat>> = self
            .hyperplanes
            .iter()
            .map(|h| h.normal.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        rank(&rows) == self.dim
    }

    /// Essential, and every chamber cone has exactly n independent extreme rays.
    fn compute_simplicial(&self) -> bool {
        if !self.essential {
            return false;
        }
        for chamber in self.enumerate_chambers() {
            let rows: Vec<Vec<Int>> = self.signed_rows(&chamber.signs);
            let Some(rays) = extreme_rays(self.dim, &rows) else {
                return false;
            };
            if rays.len() != self.dim {
                return false;
            }
            let rat_rays: Vec<Vec<Rat>> = rays
                .iter()
                .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
                .collect();
            if rank(&rat_rays) != self.dim {
                return false;
            }
        }
        true
    }

    /// Constraint rows `sign_i * normal_i`, so the chamber is `{rows . x > 0}`.
    pub fn signed_rows(&self, signs: &[Sign]) -> Vec<Vec<Int>> {
        self.hyperplanes
            .iter()
            .zip(signs)
            .map(|(h, &s)| {
                h.normal
                    .iter()
                    .map(|x| if s > 0 { x.clone() } else { -x })
                    .collect()
            })
            .collect()
    }

    /// All chambers, in lexicographic order of id, each with an exact interior
    /// witness and its wall set. Incremental insertion: each new hyperplane
    /// splits exactly the open regions it meets.
    pub fn enumerate_chambers(&self) -> Vec<Chamber> {
        let n = self.dim;
        // (signs over the first k hyperplanes, witness)
        let mut regions: Vec<(Vec<Sign>, Vec<Rat>)> = vec![(Vec::new(), vec![Rat::zero(); n])];
        for k in 0..self.hyperplanes.len() {
            let mut next = Vec::with_capacity(regions.len() * 2);
            for (signs, _witness) in regions {
                for s in [1i8, -1i8] {
                    let mut trial = signs.clone();
                    trial.push(s);
                    let rows: Vec<Vec<Int>> = self
                        .hyperplanes[..=k]
                        .iter()
                        .zip(&trial)
                        .map(|(h, &sg)| {
                            h.normal
                                .iter()
                                .map(|x| if sg > 0 { x.clone() } else { -x })
                                .collect()
                        })
                        .collect();
                    if let Some(w) = lp::strict_witness(n, &rows, &[]) {
                        next.push((trial, w));
                    }
                }
            }
            regions = next;
        }
        regions.sort_by_key(|r| signs_to_id(&r.0));
        regions
            .into_iter()
            .map(|(signs, witness)| {
                let walls = self.walls_of(&signs);
                Chamber { id: signs_to_id(&signs), signs, witness, walls }
            })
            .collect()
    }

    /// Hyperplane h supports a facet of the chamber iff the chamber's other
    /// constraints remain strictly satisfiable on h (an (n-1)-dimensional
    /// piece of the boundary).
    fn walls_of(&self, signs: &[Sign]) -> BTreeSet<usize> {
        let rows = self.signed_rows(signs);
        let mut walls = BTreeSet::new();
        for h in 0..rows.len() {
            let strict: Vec<Vec<Int>> = rows
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != h)
                .map(|(_, r)| r.clone())
                .collect();
            let eq = vec![self.hyperplanes[h].normal.clone()];
            if lp::strict_witness(self.dim, &strict, &eq).is_some() {
                walls.insert(h);
            }
        }
        walls
    }

    /// The chamber with the entrywise-negated sign vector. A central
    /// arrangement always contains it: negating the witness flips every sign.
    pub fn opposite_chamber(&self, c: &Chamber) -> Result<Chamber> {
        if c.signs.len() != self.hyperplanes.len() {
            return Err(Error::ChamberNotFound(c.id.clone()));
        }
        let signs: Vec<Sign> = c.signs.iter().map(|&s| -s).collect();
        let witness: Vec<Rat> = c.witness.iter().map(|x| -x).collect();
        for (h, &s) in self.hyperplanes.iter().zip(&signs) {
            let v = h.eval(&witness);
            if (s > 0) != v.is_positive() || v.is_zero() {
                return Err(Error::ChamberNotFound(signs_to_id(&signs)));
            }
        }
        let walls = c.walls.clone();
        Ok(Chamber { id: signs_to_id(&signs), signs, witness, walls })
    }

    /// Named arrangements used throughout: the worked planar and spatial
    /// examples, coordinate arrangements, and the A2 braid arrangement.
    pub fn generator(name: &str) -> Result<Arrangement> {
        let forms = |rows: &[&[i64]]| -> Vec<Vec<Rat>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
                .collect()
        };
        match name {
            "example-2-6" => {
                Arrangement::new(2, forms(&[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]))
            }
            "example-2-3" => Arrangement::new(
                3,
                forms(&[
                    &[1, 0, 0],
                    &[0, 1, 0],
                    &[0, 0, 1],
                    &[1, 1, 0],
                    &[1, 0, 1],
                    &[0, 1, 1],
                    &[1, 1, 1],
                ]),
            ),
            "a2" => Arrangement::new(2, forms(&[&[1, 0], &[0, 1], &[1, 1]])),
            other => {
                if let Some(ns) = other.strip_prefix("coordinate-") {
                    let n: usize = ns
                        .parse()
                        .map_err(|_| Error::UnknownGenerator(other.to_string()))?;
                    if n == 0 {
                        return Err(Error::UnknownGenerator(other.to_string()));
                    }
                    let rows: Vec<Vec<Rat>> = (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    if i == j {
                                        Rat::from_integer(Int::from(1))
                                    } else {
                                        Rat::zero()
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    Arrangement::new(n, rows)
                } else {
                    Err(Error::UnknownGenerator(other.to_string()))
                }
            }
        }
    }

    /// Line-oriented text format: `# comment`, `dim <n>`, then one hyperplane
    /// per line as n whitespace-separated rationals.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut dim: Option<usize> = None;
        let mut forms: Vec<Vec<Rat>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineref = lineno + 1;
            match dim {
                None => {
                    let Some(rest) = line.strip_prefix("dim") else {
                        return Err(Error::Parse {
                            line: lineref,
                            message: "expected `dim <n>` as the first line".into(),
                        });
                    };
                    let n: usize = rest.trim().parse().map_err(|_| Error::Parse {
                        line: lineref,
                        message: format!("bad dimension `{}`", rest.trim()),
                    })?;
                    dim = Some(n);
                }
                Some(n) => {
                    let coeffs: Vec<Rat> = line
                        .split_whitespace()
                        .map(parse_rational)
                        .collect::<std::result::Result<_, String>>()
                        .map_err(|message| Error::Parse { line: lineref, message })?;
                    if coeffs.len() != n {
                        return Err(Error::Parse {
                            line: lineref,
                            message: format!("expected {n} coefficients, got {}", coeffs.len()),
                        });
                    }
                    forms.push(coeffs);
                }
            }
        }
        let dim = dim.ok_or(Error::Parse { line: 0, message: "missing `dim <n>` line".into() })?;
        Arrangement::new(dim, forms)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for h in &self.hyperplanes {
            out.push_str(&h.to_string());
            out.push('\n');
        }
        out
    }
}

fn parse_rational(tok: &str) -> std::result::Result<Rat, String> {
    let bad = || format!("bad rational `{tok}`");
    if let Some((p, q)) = tok.split_once('/') {
        let num: Int = p.parse().map_err(|_| bad())?;
        let den: Int = q.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{tok}`"));
        }
        Ok(Rat::new(num, den))
    } else {
        let num: Int = tok.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn canonicalize_examples() {
        let half = vec![Rat::new(Int::from(1), Int::from(2)), rat(1)];
        assert_eq!(Hyperplane::canonicalize(&half).unwrap().normal(), &[Int::from(1), Int::from(2)]);
        assert_eq!(
            Hyperplane::canonicalize(&rv(&[-1, -2])).unwrap().normal(),
            &[Int::from(1), Int::from(2)]
        );
        assert_eq!(
            Hyperplane::canonicalize(&rv(&[0, 3, -3])).unwrap().normal(),
            &[Int::from(0), Int::from(1), Int::from(-1)]
        );
        assert_eq!(Hyperplane::canonicalize(&rv(&[0, 0])), Err(Error::ZeroNormal));
    }

    #[test]
    fn chamber_counts() {
        assert_eq!(Arrangement::generator("example-2-6").unwrap().enumerate_chambers().len(), 8);
        assert_eq!(Arrangement::generator("a2").unwrap().enumerate_chambers().len(), 6);
        let line = Arrangement::new(1, vec![rv(&[1])]).unwrap();
        let chambers = line.enumerate_chambers();
        let ids: Vec<&str> = chambers.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["+", "-"]);
    }

    #[test]
    fn chamber_count_32() {
        let arr = Arrangement::generator("example-2-3").unwrap();
        assert_eq!(arr.enumerate_chambers().len(), 32);
    }

    #[test]
    fn witnesses_match_ids() {
        let arr = Arrangement::generator("example-2-6").unwrap();
        for c in arr.enumerate_chambers() {
            for (h, &s) in arr.hyperplanes().iter().zip(&c.signs) {
                let v = h.eval(&c.witness);
                assert_eq!(v.is_positive(), s > 0, "chamber {} hyperplane {h:?}", c.id);
                assert!(!v.is_zero());
            }
        }
    }

    #[test]
    fn essential_flags() {
        assert!(Arrangement::generator("example-2-3").unwrap().is_essential());
        assert!(Arrangement::generator("example-2-6").unwrap().is_essential());
        let single = Arrangement::new(2, vec![rv(&[1, 0])]).unwrap();
        assert!(!single.is_essential());
        assert!(!single.is_simplicial());
    }

    #[test]
    fn simplicial_flags() {
        assert!(Arrangement::generator("example-2-6").unwrap().is_simplicial());
        assert!(Arrangement::generator("example-2-3").unwrap().is_simplicial());
    }

    #[test]
    fn simplicial_verdict_from_ray_oracle() {
        // Coordinate planes plus the sum plane in R^3: the chamber with
        // signs (+,+,-,+) has four extreme rays, so not simplicial.
        let arr = Arrangement::new(
            3,
            vec![rv(&[1, 0, 0]), rv(&[0, 1, 0]), rv(&[0, 0, 1]), rv(&[1, 1, 1])],
        )
        .unwrap();
        assert!(!arr.is_simplicial());
    }

    #[test]
    fn walls_count_in_simplicial() {
        for name in ["example-2-6", "example-2-3"] {
            let arr = Arrangement::generator(name).unwrap();
            for c in arr.enumerate_chambers() {
                assert_eq!(c.walls.len(), arr.dim(), "chamber {} of {name}", c.id);
            }
        }
    }

    #[test]
    fn opposite_involution() {
        let arr = Arrangement::generator("example-2-3").unwrap();
        for c in arr.enumerate_chambers() {
            let opp = arr.opposite_chamber(&c).unwrap();
            assert_ne!(opp.id, c.id);
            assert_eq!(arr.opposite_chamber(&opp).unwrap().id, c.id);
        }
    }

    #[test]
    fn opposite_examples() {
        let arr = Arrangement::generator("example-2-6").unwrap();
        let chambers = arr.enumerate_chambers();
        let plus = chambers.iter().find(|c| c.id == "++++").unwrap();
        assert_eq!(arr.opposite_chamber(plus).unwrap().id, "----");
        let c6 = chambers.iter().find(|c| c.id == "+-++").unwrap();
        assert_eq!(arr.opposite_chamber(c6).unwrap().id, "-+--");
        assert!(chambers.iter().any(|c| c.id == "-+--"));
    }

    #[test]
    fn duplicates_rejected() {
        let err = Arrangement::new(2, vec![rv(&[1, 2]), rv(&[-2, -4])]).unwrap_err();
        assert_eq!(err, Error::DuplicateHyperplane { index: 1, first: 0 });
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(Arrangement::new(0, vec![]), Err(Error::DegenerateArrangement));
        assert_eq!(Arrangement::new(2, vec![]), Err(Error::DegenerateArrangement));
    }

    #[test]
    fn parse_round_trip() {
        let text = "# demo\ndim 2\n1 0\n0 1\n1/2 1\n";
        let arr = Arrangement::parse(text).unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(arr.hyperplanes()[2].normal(), &[Int::from(1), Int::from(2)]);
        let again = Arrangement::parse(&arr.to_text()).unwrap();
        assert_eq!(again.hyperplanes(), arr.hyperplanes());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Arrangement::parse("dim 2\n1 oops\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match Arrangement::parse("1 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chamber_count_invariant_under_permutation() {
        let arr = Arrangement::generator("example-2-6").unwrap();
        let forms: Vec<Vec<Rat>> = arr
            .hyperplanes()
            .iter()
            .map(|h| h.normal().iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let perm = [2usize, 0, 3, 1];
        let shuffled: Vec<Vec<Rat>> = perm.iter().map(|&i| forms[i].clone()).collect();
        let arr2 = Arrangement::new(2, shuffled).unwrap();
        let orig = arr.enumerate_chambers();
        let re = arr2.enumerate_chambers();
        assert_eq!(orig.len(), re.len());
        // ids of the re-enumeration, mapped back through the permutation,
        // must form the same multiset.
        let mut mapped: Vec<String> = re
            .iter()
            .map(|c| {
                let mut signs = vec![0i8; c.signs.len()];
                for (new_idx, &old_idx) in perm.iter().enumerate() {
                    signs[old_idx] = c.signs[new_idx];
                }
                signs_to_id(&signs)
            })
            .collect();
        mapped.sort();
        let mut orig_ids: Vec<String> = orig.iter().map(|c| c.id.clone()).collect();
        orig_ids.sort();
        assert_eq!(mapped, orig_ids);
    }
}
