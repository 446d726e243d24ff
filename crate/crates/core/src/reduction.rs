//! Monotone 3-CNF formulas and the chain formula → `P_φ` (with `R_P`) →
//! `G_φ` → `H_φ`.
//!
//! Every gadget pair of `R_P` owns a slot of width [`SLOT_WIDTH`] on both
//! rails. Within slot `s` the top rail reads `ℓ¹, u_in, v_in, ℓ²` and the
//! bottom rail reads `ℓ², u_out, v_out, ℓ¹`, where `u_in/v_in` are the
//! connector lines arriving from slot `s - 1` and `u_out/v_out` the ones
//! leaving towards slot `s + 1`. A connector thus crosses exactly the two
//! `ℓ¹` lines it joins.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{int, Line, LineRef, PermutationRep, Rational, Side, Trapezoid, TrapezoidRep};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::orientation::PairSet;

pub const SLOT_WIDTH: i64 = 8;

/// Monotone 3-CNF: every clause is three distinct positive variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneCnf {
    n: usize,
    clauses: Vec<[usize; 3]>,
}

impl MonotoneCnf {
    /// Sorts each clause. Variables are `1..=n` and each must occur.
    pub fn new(n: usize, clauses: Vec<[usize; 3]>) -> Result<Self> {
        let mut used = vec![false; n + 1];
        let mut sorted = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.into_iter().enumerate() {
            let mut c = c;
            c.sort_unstable();
            if c[0] == 0 || c[2] > n {
                return Err(Error::Clause { clause: i + 1, msg: format!("variables must lie in 1..={n}") });
            }
            if c[0] == c[1] || c[1] == c[2] {
                return Err(Error::Clause { clause: i + 1, msg: "repeated variable".into() });
            }
            for &x in &c {
                used[x] = true;
            }
            sorted.push(c);
        }
        if let Some(p) = (1..=n).find(|&p| !used[p]) {
            return Err(Error::UnusedVariable(p));
        }
        Ok(MonotoneCnf { n, clauses: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// Every clause has a true and a false variable; `values[p - 1]` is `x_p`.
    pub fn nae_satisfied_by(&self, values: &[bool]) -> Result<bool> {
        if values.len() != self.n {
            return Err(Error::AssignmentLength { got: values.len(), expected: self.n });
        }
        Ok(self.clauses.iter().all(|c| {
            let t = c.iter().filter(|&&x| values[x - 1]).count();
            t == 1 || t == 2
        }))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n, self.k());
        for c in &self.clauses {
            let _ = writeln!(out, "{} {} {} 0", c[0], c[1], c[2]);
        }
        out
    }
}

/// DIMACS restricted to positive literals, three per clause. The `p cnf`
/// header is optional; without it `n` is the largest variable seen.
pub fn parse_cnf(text: &str) -> Result<MonotoneCnf> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut start_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let bad = || Error::Cnf { line: line_no, msg: "expected `p cnf <vars> <clauses>`".into() };
            if parts.len() != 3 || parts[0] != "cnf" || header.is_some() {
                return Err(bad());
            }
            let n = parts[1].parse().map_err(|_| bad())?;
            let k = parts[2].parse().map_err(|_| bad())?;
            header = Some((n, k, line_no));
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::Cnf { line: line_no, msg: format!("not an integer: {tok:?}") })?;
            if current.is_empty() {
                start_line = line_no;
            }
            match lit {
                0 => {
                    if current.len() != 3 {
                        return Err(Error::Cnf {
                            line: start_line,
                            msg: format!("clause has {} literals, expected 3", current.len()),
                        });
                    }
                    let c = [current[0], current[1], current[2]];
                    if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                        return Err(Error::Cnf { line: start_line, msg: "repeated variable in clause".into() });
                    }
                    clauses.push(c);
                    current.clear();
                }
                l if l < 0 => {
                    return Err(Error::Cnf { line: line_no, msg: format!("negated literal {l} in a monotone formula") });
                }
                l => current.push(l as usize),
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::Cnf { line: start_line, msg: "clause is not terminated by 0".into() });
    }
    let n = match header {
        Some((n, k, line)) => {
            if k != clauses.len() {
                return Err(Error::Cnf { line, msg: format!("header announces {k} clauses, found {}", clauses.len()) });
            }
            n
        }
        None => clauses.iter().flatten().copied().max().unwrap_or(0),
    };
    MonotoneCnf::new(n, clauses)
}

/// `P_φ` with its permutation representation and everything needed to
/// build `G_φ` and to flip variable blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionArtifacts {
    pub cnf: MonotoneCnf,
    pub pphi: Graph,
    pub rp: PermutationRep,
    pub merge_pairs: PairSet,
    /// `blocks[p - 1]`: line ids of the block of `x_p`.
    pub blocks: Vec<VertexSet>,
    /// Variable of every line.
    pub block_of: Vec<usize>,
    pub labels: Vec<String>,
    pub connectors: usize,
}

impl ReductionArtifacts {
    pub fn line_count(&self) -> usize {
        self.rp.len()
    }

    /// `m`, the number of merge pairs.
    pub fn m(&self) -> usize {
        self.merge_pairs.len()
    }

    /// `R_P` with the blocks of the given variables (1-based) flipped.
    pub fn flip_blocks(&self, variables: &[usize]) -> Result<PermutationRep> {
        let mut rep = self.rp.clone();
        for &p in variables {
            let block = self.blocks.get(p.wrapping_sub(1)).ok_or(Error::VertexOutOfRange { vertex: p, n: self.cnf.n() })?;
            rep = rep.block_horizontal_flip(block)?;
        }
        Ok(rep)
    }
}

/// Lines `(ℓ¹, ℓ²)` for position `j` of clause `i` (both 0-based).
fn gadget_lines(i: usize, j: usize) -> (Vertex, Vertex) {
    let base = 6 * i;
    match j {
        0 => (base, base + 2),     // (a, c)
        1 => (base + 4, base + 1), // (e, b)
        _ => (base + 3, base + 5), // (d, f)
    }
}

pub fn build_pphi(f: &MonotoneCnf) -> Result<ReductionArtifacts> {
    let k = f.k();
    // slots ordered by (variable, clause, position)
    let mut slots: Vec<(usize, usize, usize)> =
        f.clauses().iter().enumerate().flat_map(|(i, c)| (0..3).map(move |j| (c[j], i, j))).collect();
    slots.sort_unstable();

    let line_count = 12 * k - 2 * f.n();
    let mut lines: Vec<Option<Line>> = vec![None; 6 * k];
    let mut labels: Vec<String> = (0..k).flat_map(|i| ["a", "b", "c", "d", "e", "f"].map(|x| format!("{x}_{}", i + 1))).collect();
    let mut block_of = vec![0usize; 6 * k];
    let mut pairs: Vec<(Vertex, Vertex)> = (0..k).flat_map(|i| [(6 * i, 6 * i + 1), (6 * i + 2, 6 * i + 3), (6 * i + 4, 6 * i + 5)]).collect();
    let w = SLOT_WIDTH;

    for (s, &(p, i, j)) in slots.iter().enumerate() {
        let base = w * s as i64;
        let (l1, l2) = gadget_lines(i, j);
        lines[l1] = Some(Line::new(int(base + 1), int(base + 6)));
        lines[l2] = Some(Line::new(int(base + 6), int(base + 1)));
        block_of[l1] = p;
        block_of[l2] = p;
    }
    let mut lines: Vec<Line> = lines.into_iter().map(|l| l.expect("every gadget line placed")).collect();

    for s in 0..slots.len().saturating_sub(1) {
        let (p, i, j) = slots[s];
        let (q, i2, j2) = slots[s + 1];
        if p != q {
            continue;
        }
        let base = w * s as i64;
        let next = w * (s as i64 + 1);
        let (u, v) = (lines.len(), lines.len() + 1);
        lines.push(Line::new(int(next + 3), int(base + 3)));
        lines.push(Line::new(int(next + 4), int(base + 4)));
        let tag = format!("{},{};{},{}", i + 1, j + 1, i2 + 1, j2 + 1);
        labels.push(format!("u({tag})"));
        labels.push(format!("v({tag})"));
        block_of.extend([p, p]);
        pairs.push((u, v));
    }
    debug_assert_eq!(lines.len(), line_count);

    let rp = PermutationRep::new(lines)?;
    let pphi = rp.graph();
    let merge_pairs = PairSet::new(line_count, pairs)?;
    let mut blocks = vec![Vec::new(); f.n()];
    for (line, &p) in block_of.iter().enumerate() {
        blocks[p - 1].push(line);
    }
    let blocks = blocks.into_iter().map(|b| b.into_iter().collect()).collect();
    Ok(ReductionArtifacts {
        cnf: f.clone(),
        pphi,
        rp,
        merge_pairs,
        blocks,
        block_of,
        labels,
        connectors: line_count - 6 * k,
    })
}

/// `G_φ`: vertex `i` is merge pair `i`, drawn as the trapezoid between its
/// two lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gphi {
    pub graph: Graph,
    pub rep: TrapezoidRep,
    /// `(left line, right line)` of every vertex, as line ids of `R_P`.
    pub lines: Vec<(Vertex, Vertex)>,
    pub labels: Vec<String>,
}

pub fn build_gphi(art: &ReductionArtifacts) -> Result<Gphi> {
    let mut traps = Vec::with_capacity(art.m());
    let mut lines = Vec::with_capacity(art.m());
    let mut labels = Vec::with_capacity(art.m());
    for &(x, y) in art.merge_pairs.pairs() {
        let (lx, ly) = (art.rp.line(x), art.rp.line(y));
        let (l, r) = if lx.top < ly.top { (x, y) } else { (y, x) };
        let (ll, rl) = (art.rp.line(l), art.rp.line(r));
        assert!(ll.left_of(rl), "merge pair {x},{y} crosses");
        traps.push(Trapezoid::from_lines(ll, rl));
        lines.push((l, r));
        labels.push(format!("{{{},{}}}", art.labels[x], art.labels[y]));
    }
    let rep = TrapezoidRep::new(traps)?;
    Ok(Gphi { graph: rep.graph(), rep, lines, labels })
}

/// `H_φ`: `G_φ` plus six parallelograms per vertex. Vertex `i < m` is the
/// original `u_i`; vertex `m + 6i + g` is gadget `g + 1` of `u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hphi {
    pub graph: Graph,
    pub rep: TrapezoidRep,
    pub originals: usize,
    /// For each gadget vertex (index `w - m`), the line it surrounds.
    pub parents: Vec<LineRef>,
}

impl Hphi {
    /// `R_H` with every coordinate replaced by its rank on its rail.
    pub fn normalized(&self) -> TrapezoidRep {
        self.rep.renormalize()
    }

    pub fn original_set(&self) -> VertexSet {
        (0..self.originals).collect()
    }

    /// Lines of `R_H` sitting at the given line of an original vertex: the
    /// line itself and both lines of its three gadgets.
    pub fn lines_at(&self, at: LineRef) -> Vec<LineRef> {
        let mut out = vec![at];
        for (g, parent) in self.parents.iter().enumerate() {
            if *parent == at {
                let w = self.originals + g;
                out.push(LineRef { vertex: w, side: Side::Left });
                out.push(LineRef { vertex: w, side: Side::Right });
            }
        }
        out
    }
}

/// Adds the gadgets around every trapezoid of `rg`, in vertex order. The
/// gap `ε` is re-measured before the gadgets of every line, so the left-
/// and right-line gadgets of one trapezoid never meet.
///
/// The exact coordinates are kept: straightening a flipped `R_H` with its
/// top rail fixed depends on distances, not only on endpoint order. Use
/// [`Hphi::normalized`] for small integer coordinates.
pub fn build_hphi(rg: &TrapezoidRep) -> Result<Hphi> {
    let m = rg.len();
    let mut traps: Vec<Trapezoid> = rg.traps().to_vec();
    let mut parents = Vec::with_capacity(6 * m);
    let eighths = |e: &Rational, k: i64| e * Rational::new(k.into(), 8.into());
    for i in 0..m {
        for side in [Side::Left, Side::Right] {
            let eps = TrapezoidRep::new(traps.clone())?.min_gap().unwrap_or_else(|| int(1));
            let line = traps[i].side(side);
            // (left offset, right offset) in eighths of ε
            let offsets: [(i64, i64); 3] = match side {
                Side::Left => [(-4, 4), (-6, -2), (-7, -3)],
                Side::Right => [(-4, 4), (2, 6), (3, 7)],
            };
            for (lo, hi) in offsets {
                let l = line.shifted(&eighths(&eps, lo));
                let r = line.shifted(&eighths(&eps, hi));
                traps.push(Trapezoid::from_lines(&l, &r));
                parents.push(LineRef { vertex: i, side });
            }
        }
    }
    let rep = TrapezoidRep::new(traps)?;
    Ok(Hphi { graph: rep.graph(), rep, originals: m, parents })
}

impl Hphi {
    /// `R_H` with every line belonging to a flipped variable block swapped
    /// between the rails.
    pub fn flip_blocks(&self, gphi: &Gphi, art: &ReductionArtifacts, variables: &[usize]) -> Result<TrapezoidRep> {
        let mut chosen = Vec::new();
        for v in 0..self.originals {
            let (l, r) = gphi.lines[v];
            for (side, line) in [(Side::Left, l), (Side::Right, r)] {
                if variables.contains(&art.block_of[line]) {
                    chosen.extend(self.lines_at(LineRef { vertex: v, side }));
                }
            }
        }
        let mut by_block: BTreeMap<usize, Vec<LineRef>> = BTreeMap::new();
        for r in chosen {
            let line = if r.vertex < self.originals {
                let (l, rr) = gphi.lines[r.vertex];
                if r.side == Side::Left { l } else { rr }
            } else {
                let p = self.parents[r.vertex - self.originals];
                if p.side == Side::Left { gphi.lines[p.vertex].0 } else { gphi.lines[p.vertex].1 }
            };
            by_block.entry(art.block_of[line]).or_default().push(r);
        }
        let mut rep = self.rep.clone();
        for lines in by_block.values() {
            rep = rep.flip_lines(lines)?;
        }
        Ok(rep)
    }
}

/// The formula `(x1 ∨ x2 ∨ x3) ∧ (x2 ∨ x3 ∨ x4) ∧ (x1 ∨ x2 ∨ x4)`.
pub fn sample_formula() -> MonotoneCnf {
    MonotoneCnf::new(4, vec![[1, 2, 3], [2, 3, 4], [1, 2, 4]]).expect("valid formula")
}
