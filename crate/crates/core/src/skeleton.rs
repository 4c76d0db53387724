//! The oriented 1-skeleton: chambers as vertices, wall-crossing arrows,
//! separating sets and the gallery-distance matrix.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::arrangement::{Arrangement, Chamber};
use crate::error::{Error, Result};

/// A directed wall crossing between adjacent chambers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub hyperplane: usize,
}

/// The chamber graph of a simplicial arrangement, immutable after build.
#[derive(Debug)]
pub struct ChamberGraph {
    arr: Arrangement,
    chambers: Vec<Chamber>,
    index: HashMap<String, usize>,
    arrows: Vec<Vec<Arrow>>,
    dist: Vec<Vec<u32>>,
    // memoized literal minimal paths; logically transparent
    minpaths: Mutex<HashMap<(usize, usize), Vec<Vec<usize>>>>,
}

impl ChamberGraph {
    /// Build the full 1-skeleton. Adjacency is taken from the wall sets
    /// (the exact wall-dimension test), not from sign-vector differences.
    pub fn build(arr: Arrangement) -> Result<ChamberGraph> {
        if !arr.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        let chambers = arr.enumerate_chambers();
        let index: HashMap<String, usize> =
            chambers.iter().enumerate().map(|(i, c)| (c.id.clone(), i)).collect();
        let mut arrows: Vec<Vec<Arrow>> = vec![Vec::new(); chambers.len()];
        for (i, c) in chambers.iter().enumerate() {
            for &h in &c.walls {
                let mut signs = c.signs.clone();
                signs[h] = -signs[h];
                let id = crate::arrangement::signs_to_id(&signs);
                let j = *index
                    .get(&id)
                    .ok_or_else(|| Error::ChamberNotFound(id.clone()))?;
                arrows[i].push(Arrow { source: i, target: j, hyperplane: h });
            }
            arrows[i].sort_by(|a, b| chambers[a.target].id.cmp(&chambers[b.target].id));
        }
        let dist: Vec<Vec<u32>> = chambers
            .iter()
            .map(|c| {
                chambers
                    .iter()
                    .map(|d| {
                        c.signs.iter().zip(&d.signs).filter(|(a, b)| a != b).count() as u32
                    })
                    .collect()
            })
            .collect();
        Ok(ChamberGraph { arr, chambers, index, arrows, dist, minpaths: Mutex::new(HashMap::new()) })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chamber(&self, i: usize) -> &Chamber {
        &self.chambers[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.chambers[i].id
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownChamber(id.to_string()))
    }

    pub fn arrows_from(&self, i: usize) -> &[Arrow] {
        &self.arrows[i]
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().map(|a| a.len()).sum()
    }

    pub fn distance(&self, c: usize, d: usize) -> u32 {
        self.dist[c][d]
    }

    /// Hyperplanes on which the two chambers take opposite signs.
    pub fn separating_set(&self, c: usize, d: usize) -> Vec<usize> {
        self.chambers[c]
            .signs
            .iter()
            .zip(&self.chambers[d].signs)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(h, _)| h)
            .collect()
    }

    /// The unique adjacent chamber across wall `h` of chamber `c`.
    pub fn step(&self, c: usize, h: usize) -> Result<usize> {
        self.arrows[c]
            .iter()
            .find(|a| a.hyperplane == h)
            .map(|a| a.target)
            .ok_or_else(|| Error::NotAWall {
                chamber: self.chambers[c].id.clone(),
                hyperplane: h,
                step: 0,
            })
    }

    pub fn opposite(&self, c: usize) -> usize {
        let signs: Vec<i8> = self.chambers[c].signs.iter().map(|&s| -s).collect();
        let id = crate::arrangement::signs_to_id(&signs);
        self.index[&id]
    }

    /// All literal minimal positive paths from `c` to `d`, as crossing lists,
    /// in lexicographic order. Every minimal step crosses a separating wall.
    pub fn minimal_paths(&self, c: usize, d: usize) -> Vec<Vec<usize>> {
        if let Some(cached) = self.minpaths.lock().unwrap().get(&(c, d)) {
            return cached.clone();
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.minimal_paths_rec(c, d, &mut prefix, &mut out);
        self.minpaths.lock().unwrap().insert((c, d), out.clone());
        out
    }

    fn minimal_paths_rec(
        &self,
        c: usize,
        d: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if c == d {
            out.push(prefix.clone());
            return;
        }
        // walls in increasing order keeps the output lexicographic
        for &h in &self.chambers[c].walls {
            if self.chambers[c].signs[h] != self.chambers[d].signs[h] {
                let next = self.step(c, h).expect("walls are steppable");
                prefix.push(h);
                self.minimal_paths_rec(next, d, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Graphviz rendering: one undirected edge per inverse arrow pair.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph skeleton {\n");
        for c in &self.chambers {
            out.push_str(&format!("  \"{}\";\n", c.id));
        }
        for (i, arrows) in self.arrows.iter().enumerate() {
            for a in arrows {
                if i < a.target {
                    out.push_str(&format!(
                        "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                        self.chambers[i].id, self.chambers[a.target].id, a.hyperplane
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct ChamberOut<'a> {
            id: &'a str,
            witness: Vec<String>,
            walls: Vec<usize>,
        }
        #[derive(Serialize)]
        struct ArrowOut<'a> {
            source: &'a str,
            target: &'a str,
            hyperplane: usize,
        }
        let chambers: Vec<ChamberOut> = self
            .chambers
            .iter()
            .map(|c| ChamberOut {
                id: &c.id,
                witness: c.witness.iter().map(|x| x.to_string()).collect(),
                walls: c.walls.iter().copied().collect(),
            })
            .collect();
        let mut arrows: Vec<ArrowOut> = self
            .arrows
            .iter()
            .flatten()
            .map(|a| ArrowOut {
                source: &self.chambers[a.source].id,
                target: &self.chambers[a.target].id,
                hyperplane: a.hyperplane,
            })
            .collect();
        arrows.sort_by(|a, b| (a.source, a.target).cmp(&(b.source, b.target)));
        serde_json::json!({
            "chambers": chambers,
            "arrows": arrows,
        })
    }
}
