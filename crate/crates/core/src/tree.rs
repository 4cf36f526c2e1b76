//! Adaptive `2^D`-ary tree on the real parts of complex points, with
//! complexified box centres and the four interaction lists.
//!
//! Boxes carry integer dyadic coordinates, so every distance test between
//! boxes is an exact integer comparison. Two boxes `a`, `b` are *near* when
//! `‖x_a - x_b‖∞ <= (k/2)(w_a + w_b)`; same-level near boxes are the
//! `k`-colleagues.

use crate::cgeom::CVec;
use crate::error::{FmmError, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeConfig {
    pub max_pts_per_leaf: usize,
    pub k: u8,
    pub max_levels: usize,
}

impl TreeConfig {
    pub fn default_for(dim: usize) -> Self {
        TreeConfig { max_pts_per_leaf: if dim == 2 { 40 } else { 120 }, k: 1, max_levels: 40 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxNode<const D: usize> {
    pub id: usize,
    pub level: usize,
    /// Integer position in the level-`level` grid.
    pub idx: [i64; D],
    pub center: [f64; D],
    pub width: f64,
    pub ccenter: CVec<D>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Range into the permuted point order.
    pub start: usize,
    pub end: usize,
}

impl<const D: usize> BoxNode<D> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn count(&self) -> usize {
        self.end - self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointPermutation {
    /// `forward[j]` is the user index of the point at tree position `j`.
    pub forward: Vec<usize>,
    /// `inverse[i]` is the tree position of user point `i`.
    pub inverse: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InteractionLists {
    pub list1: Vec<Vec<usize>>,
    pub list2: Vec<Vec<usize>>,
    pub list3: Vec<Vec<usize>>,
    pub list4: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct Tree<const D: usize> {
    pub cfg: TreeConfig,
    pub boxes: Vec<BoxNode<D>>,
    pub perm: PointPermutation,
    /// Lower corner and width of the root box.
    pub origin: [f64; D],
    pub root_width: f64,
    lookup: HashMap<(usize, [i64; D]), usize>,
}

fn child_offset<const D: usize>(c: usize) -> [i64; D] {
    std::array::from_fn(|d| ((c >> d) & 1) as i64)
}

impl<const D: usize> Tree<D> {
    /// Adaptive tree on the real parts of `points`.
    pub fn build(points: &[CVec<D>], cfg: TreeConfig) -> Result<Self> {
        if points.is_empty() {
            return Err(FmmError::InvalidInput("tree needs at least one point".into()));
        }
        if cfg.max_pts_per_leaf == 0 || !(1..=2).contains(&cfg.k) {
            return Err(FmmError::InvalidInput(format!("bad tree configuration {cfg:?}")));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(FmmError::InvalidInput(format!("point {i} is not finite")));
        }
        let mut lo = [f64::INFINITY; D];
        let mut hi = [f64::NEG_INFINITY; D];
        for p in points {
            for d in 0..D {
                lo[d] = lo[d].min(p.0[d].re);
                hi[d] = hi[d].max(p.0[d].re);
            }
        }
        let span = (0..D).map(|d| hi[d] - lo[d]).fold(0.0, f64::max);
        let span = if span > 0.0 { span } else { 1.0 };
        let root_width = span * 1.001;
        let origin: [f64; D] = std::array::from_fn(|d| 0.5 * (lo[d] + hi[d]) - 0.5 * root_width);
        let mut tree = Tree {
            cfg,
            boxes: Vec::new(),
            perm: PointPermutation { forward: (0..points.len()).collect(), inverse: Vec::new() },
            origin,
            root_width,
            lookup: HashMap::new(),
        };
        tree.push_box(0, [0; D], None, 0, points.len());
        let mut i = 0;
        while i < tree.boxes.len() {
            if tree.boxes[i].count() > cfg.max_pts_per_leaf {
                if tree.boxes[i].level >= cfg.max_levels {
                    return Err(FmmError::MaxDepthExceeded(cfg.max_levels));
                }
                tree.split(i, points);
            }
            i += 1;
        }
        tree.level_restrict(points)?;
        tree.perm.inverse = vec![0; points.len()];
        for (j, &u) in tree.perm.forward.iter().enumerate() {
            tree.perm.inverse[u] = j;
        }
        tree.complexify(points);
        Ok(tree)
    }

    fn width_at(&self, level: usize) -> f64 {
        self.root_width / (1u64 << level) as f64
    }

    fn push_box(&mut self, level: usize, idx: [i64; D], parent: Option<usize>, start: usize, end: usize) -> usize {
        let w = self.width_at(level);
        let center = std::array::from_fn(|d| self.origin[d] + (idx[d] as f64 + 0.5) * w);
        let id = self.boxes.len();
        self.boxes.push(BoxNode { id, level, idx, center, width: w, ccenter: CVec::from_real(center), parent, children: Vec::new(), start, end });
        self.lookup.insert((level, idx), id);
        id
    }

    /// Subdivide box `b` into `2^D` children, partitioning its points stably.
    fn split(&mut self, b: usize, points: &[CVec<D>]) {
        let (start, end, level, idx, center) = {
            let bx = &self.boxes[b];
            (bx.start, bx.end, bx.level, bx.idx, bx.center)
        };
        let nchild = 1usize << D;
        // half-open boxes: a point on a dividing plane goes to the upper child
        let which = |u: usize| -> usize { (0..D).map(|d| ((points[u].0[d].re >= center[d]) as usize) << d).sum() };
        let slice = &mut self.perm.forward[start..end];
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); nchild];
        for &u in slice.iter() {
            buckets[which(u)].push(u);
        }
        let mut pos = start;
        let mut ranges = Vec::with_capacity(nchild);
        for bucket in &buckets {
            ranges.push((pos, pos + bucket.len()));
            pos += bucket.len();
        }
        let flat: Vec<usize> = buckets.into_iter().flatten().collect();
        self.perm.forward[start..end].copy_from_slice(&flat);
        let mut kids = Vec::with_capacity(nchild);
        for (c, &(s, e)) in ranges.iter().enumerate() {
            let off = child_offset::<D>(c);
            let cidx = std::array::from_fn(|d| 2 * idx[d] + off[d]);
            kids.push(self.push_box(level + 1, cidx, Some(b), s, e));
        }
        self.boxes[b].children = kids;
    }

    /// `‖x_a - x_b‖∞ <= (k/2)(w_a + w_b)`, exactly.
    pub fn near(&self, a: usize, b: usize) -> bool {
        let (ba, bb) = (&self.boxes[a], &self.boxes[b]);
        let l = ba.level.max(bb.level);
        let (sa, sb) = (1i64 << (l - ba.level), 1i64 << (l - bb.level));
        let k = self.cfg.k as i64;
        // centres in units of w_l / 2
        let lim = k * (sa + sb);
        (0..D).all(|d| ((2 * ba.idx[d] + 1) * sa - (2 * bb.idx[d] + 1) * sb).abs() <= lim)
    }

    /// `k`-colleagues of `b` (same level, including `b`), in a fixed order.
    pub fn colleagues(&self, b: usize) -> Vec<usize> {
        let bx = &self.boxes[b];
        let k = self.cfg.k as i64;
        let side = (2 * k + 1) as usize;
        let mut out = Vec::new();
        for t in 0..side.pow(D as u32) {
            let mut rem = t;
            let mut idx = bx.idx;
            for d in 0..D {
                idx[d] += (rem % side) as i64 - k;
                rem /= side;
            }
            if let Some(&c) = self.lookup.get(&(bx.level, idx)) {
                out.push(c);
            }
        }
        out
    }

    /// Split coarse leaves until no two near leaves differ by two or more levels.
    fn level_restrict(&mut self, points: &[CVec<D>]) -> Result<()> {
        // A near coarse leaf two levels up is always a colleague of the
        // grandparent. Splitting creates new leaves beside boxes already
        // visited, so sweep until nothing changes.
        loop {
            let mut changed = false;
            let mut level = self.depth();
            while level >= 2 {
                let at_level: Vec<usize> = self.boxes.iter().filter(|b| b.level == level).map(|b| b.id).collect();
                for a in at_level {
                    let g = self.boxes[self.boxes[a].parent.unwrap()].parent.unwrap();
                    for c in self.colleagues(g) {
                        if self.boxes[c].is_leaf() && self.near(a, c) {
                            if self.boxes[c].level >= self.cfg.max_levels {
                                return Err(FmmError::MaxDepthExceeded(self.cfg.max_levels));
                            }
                            self.split(c, points);
                            changed = true;
                        }
                    }
                }
                level -= 1;
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Imaginary part of each centre: mean over contained points, or the
    /// parent's offset for an empty box.
    fn complexify(&mut self, points: &[CVec<D>]) {
        for b in 0..self.boxes.len() {
            let bx = &self.boxes[b];
            let im: [f64; D] = if bx.count() > 0 {
                let mut s = [0.0; D];
                for &u in &self.perm.forward[bx.start..bx.end] {
                    for d in 0..D {
                        s[d] += points[u].0[d].im;
                    }
                }
                s.map(|v| v / bx.count() as f64)
            } else {
                match bx.parent {
                    Some(p) => self.boxes[p].ccenter.im(),
                    None => [0.0; D],
                }
            };
            let center = bx.center;
            self.boxes[b].ccenter = CVec::from_parts(center, im);
        }
    }

    pub fn depth(&self) -> usize {
        self.boxes.iter().map(|b| b.level).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &BoxNode<D>> {
        self.boxes.iter().filter(|b| b.is_leaf())
    }

    /// Box ids grouped by level.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.depth() + 1];
        for b in &self.boxes {
            out[b.level].push(b.id);
        }
        out
    }

    /// Whether box `a` contains (or is) box `b`.
    pub fn contains(&self, a: usize, b: usize) -> bool {
        let (ba, bb) = (&self.boxes[a], &self.boxes[b]);
        bb.level >= ba.level && (0..D).all(|d| bb.idx[d] >> (bb.level - ba.level) == ba.idx[d])
    }

    pub fn build_lists(&self) -> InteractionLists {
        let n = self.boxes.len();
        let mut lists = InteractionLists { list1: vec![Vec::new(); n], list2: vec![Vec::new(); n], list3: vec![Vec::new(); n], list4: vec![Vec::new(); n] };
        let k = self.cfg.k as i64;
        for b in 0..n {
            let bx = &self.boxes[b];
            if let Some(p) = bx.parent {
                for c in self.colleagues(p) {
                    for &ch in &self.boxes[c].children {
                        let far = (0..D).any(|d| (self.boxes[ch].idx[d] - bx.idx[d]).abs() > k);
                        if far {
                            lists.list2[b].push(ch);
                        }
                    }
                }
            }
            if !bx.is_leaf() {
                continue;
            }
            let (mut l1, mut l3) = (Vec::new(), Vec::new());
            for a in self.colleagues(b) {
                if self.boxes[a].is_leaf() {
                    l1.push(a);
                } else {
                    self.descend(b, a, &mut l1, &mut l3);
                }
            }
            // coarser near leaves, through every ancestor's colleagues
            let mut anc = bx.parent;
            while let Some(p) = anc {
                for a in self.colleagues(p) {
                    if self.boxes[a].is_leaf() && self.near(a, b) {
                        l1.push(a);
                    }
                }
                anc = self.boxes[p].parent;
            }
            lists.list1[b] = l1;
            lists.list3[b] = l3;
        }
        for b in 0..n {
            for &c in &lists.list3[b] {
                lists.list4[c].push(b);
            }
        }
        lists
    }

    fn descend(&self, b: usize, a: usize, l1: &mut Vec<usize>, l3: &mut Vec<usize>) {
        for &c in &self.boxes[a].children {
            if !self.near(b, c) {
                l3.push(c);
            } else if self.boxes[c].is_leaf() {
                l1.push(c);
            } else {
                self.descend(b, c, l1, l3);
            }
        }
    }

    /// Level-restriction predicate over all childless pairs (brute force).
    pub fn audit_level_restriction(&self) -> bool {
        let leaves: Vec<usize> = self.leaves().map(|b| b.id).collect();
        leaves.iter().all(|&a| {
            leaves.iter().all(|&b| {
                let (la, lb) = (self.boxes[a].level, self.boxes[b].level);
                la.abs_diff(lb) < 2 || !self.near(a, b)
            })
        })
    }

    /// Number of interaction paths for every (target leaf, source leaf)
    /// pair; a correct set of lists gives exactly one for each. Returns the
    /// pairs whose count differs from one.
    pub fn audit_coverage(&self, lists: &InteractionLists) -> Vec<(usize, usize, usize)> {
        // leaves in depth-first order, so every box spans a contiguous run
        let mut span = vec![(0usize, 0usize); self.boxes.len()];
        let mut order = Vec::new();
        let root = self.boxes.iter().position(|b| b.parent.is_none()).unwrap_or(0);
        let mut stack = vec![(root, false)];
        while let Some((b, done)) = stack.pop() {
            if done {
                span[b].1 = order.len();
                continue;
            }
            span[b].0 = order.len();
            if self.boxes[b].is_leaf() {
                order.push(b);
                span[b].1 = order.len();
                continue;
            }
            stack.push((b, true));
            stack.extend(self.boxes[b].children.iter().rev().map(|&c| (c, false)));
        }
        let mut bad = Vec::new();
        let mut count = vec![0usize; order.len()];
        for &t in &order {
            count.fill(0);
            let mut hit = |c: usize| count[span[c].0..span[c].1].iter_mut().for_each(|x| *x += 1);
            lists.list1[t].iter().chain(&lists.list3[t]).for_each(|&c| hit(c));
            let mut anc = Some(t);
            while let Some(a) = anc {
                lists.list2[a].iter().chain(&lists.list4[a]).for_each(|&c| hit(c));
                anc = self.boxes[a].parent;
            }
            bad.extend(count.iter().zip(&order).filter(|(n, _)| **n != 1).map(|(&n, &s)| (t, s, n)));
        }
        bad
    }

    /// One box per line: id, level, centre, width, imaginary offset,
    /// parent, children, leaf flag.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for b in &self.boxes {
            let parent = b.parent.map_or("-".to_string(), |p| p.to_string());
            let kids = if b.children.is_empty() { "-".to_string() } else { b.children.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",") };
            let fmt = |v: [f64; D]| v.iter().map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(",");
            let _ = writeln!(s, "{} {} {} {:.17e} {} {} {} {}", b.id, b.level, fmt(b.center), b.width, fmt(b.ccenter.im()), parent, kids, b.is_leaf() as u8);
        }
        s
    }
}

/// Complexified centre of every box as a plain array, for the drivers.
pub fn centers<const D: usize>(tree: &Tree<D>) -> Vec<CVec<D>> {
    tree.boxes.iter().map(|b| b.ccenter).collect()
}
