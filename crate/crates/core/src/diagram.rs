//! Planar diagrams and Gauss codes.
//!
//! A [`PDDiagram`] stores each crossing as four arc labels in
//! counterclockwise order, starting at the incoming under-arc, together with
//! the crossing sign. For a positive crossing the over-strand runs from slot 3
//! to slot 1; for a negative crossing from slot 1 to slot 3. The under-strand
//! always runs from slot 0 to slot 2. Closed crossingless circles are counted
//! separately in `loops`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("no crossing with id {0}")]
    UnknownCrossing(usize),
    #[error("diagram has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("invalid planar diagram: {0}")]
    InvalidPd(String),
    #[error("malformed Gauss token `{0}`")]
    MalformedGauss(String),
    #[error("crossing {0} must occur exactly twice")]
    LabelCount(u32),
    #[error("crossing {0} must be passed once over and once under")]
    OverUnderImbalance(u32),
    #[error("crossing {0} carries conflicting signs")]
    SignConflict(u32),
    #[error("{0} crossings exceed the brute-force limit of {1}")]
    GuardExceeded(usize, usize),
    #[error("Gauss code is not realizable by a planar diagram")]
    NotRealizable,
}

/// One crossing: arcs counterclockwise from the incoming under-arc.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn new(arcs: [u32; 4], sign: i8) -> Self {
        Self { arcs, sign }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.sign < 0,
            _ => self.sign > 0,
        }
    }

    /// Slot through which a strand entering at `slot` leaves.
    pub fn exit_slot(slot: usize) -> usize {
        (slot + 2) % 4
    }

    pub fn over_in(&self) -> u32 {
        if self.sign > 0 {
            self.arcs[3]
        } else {
            self.arcs[1]
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.sign > 0 {
            self.arcs[1]
        } else {
            self.arcs[3]
        }
    }

    pub fn under_in(&self) -> u32 {
        self.arcs[0]
    }

    pub fn under_out(&self) -> u32 {
        self.arcs[2]
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PDDiagram {
    crossings: Vec<Crossing>,
    loops: usize,
}

/// Where each arc starts and ends, indexed by arc label.
pub(crate) struct Topology {
    /// `(crossing, slot)` where the arc is incoming.
    head: Vec<(u32, u8)>,
    /// `(crossing, slot)` where the arc is outgoing.
    tail: Vec<(u32, u8)>,
}

const NONE: (u32, u8) = (u32::MAX, 0);

impl Topology {
    pub(crate) fn new(d: &PDDiagram) -> Self {
        let size = d.max_label().map_or(0, |m| m as usize + 1);
        let mut head = vec![NONE; size];
        let mut tail = vec![NONE; size];
        for (ci, c) in d.crossings.iter().enumerate() {
            for slot in 0..4 {
                let entry = (ci as u32, slot as u8);
                if c.is_incoming(slot) {
                    head[c.arcs[slot] as usize] = entry;
                } else {
                    tail[c.arcs[slot] as usize] = entry;
                }
            }
        }
        Self { head, tail }
    }

    pub(crate) fn head(&self, arc: u32) -> (usize, usize) {
        let (c, s) = self.head[arc as usize];
        (c as usize, s as usize)
    }

    pub(crate) fn tail(&self, arc: u32) -> (usize, usize) {
        let (c, s) = self.tail[arc as usize];
        (c as usize, s as usize)
    }

    /// The arc following `arc` along the orientation.
    pub(crate) fn next(&self, d: &PDDiagram, arc: u32) -> u32 {
        let (c, s) = self.head(arc);
        d.crossings[c].arcs[Crossing::exit_slot(s)]
    }
}

impl PDDiagram {
    /// Builds and validates a diagram.
    pub fn new(crossings: Vec<Crossing>, loops: usize) -> Result<Self, DiagramError> {
        let d = Self { crossings, loops };
        d.validate()?;
        Ok(d)
    }

    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            loops: 1,
        }
    }

    /// `m` disjoint crossingless circles.
    pub fn unlink(m: usize) -> Self {
        Self {
            crossings: Vec::new(),
            loops: m,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub(crate) fn max_label(&self) -> Option<u32> {
        self.crossings.iter().flat_map(|c| c.arcs).max()
    }

    /// Arc labels in ascending order.
    pub fn arcs(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .crossings
            .iter()
            .flat_map(|c| c.arcs.iter().enumerate().filter(|(s, _)| !c.is_incoming(*s)))
            .map(|(_, a)| *a)
            .collect();
        v.sort_unstable();
        v
    }

    fn validate(&self) -> Result<(), DiagramError> {
        use std::collections::HashMap;
        let mut ins: HashMap<u32, usize> = HashMap::new();
        let mut outs: HashMap<u32, usize> = HashMap::new();
        for c in &self.crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::InvalidPd(format!("sign {} is not ±1", c.sign)));
            }
            for s in 0..4 {
                let m = if c.is_incoming(s) { &mut ins } else { &mut outs };
                *m.entry(c.arcs[s]).or_default() += 1;
            }
        }
        for (arc, n) in ins.iter() {
            if *n != 1 || outs.get(arc) != Some(&1) {
                return Err(DiagramError::InvalidPd(format!(
                    "arc {arc} needs exactly one inflow and one outflow"
                )));
            }
        }
        if let Some(arc) = outs.keys().find(|a| !ins.contains_key(a)) {
            return Err(DiagramError::InvalidPd(format!("arc {arc} has no inflow")));
        }
        Ok(())
    }

    /// Closure of a braid: crossing `k` of the diagram is letter `k` of the
    /// word, with the same sign.
    pub fn from_braid(b: &BraidWord) -> Self {
        let n = b.strands();
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let mut next = n as u32 + 1;
        let mut crossings = Vec::with_capacity(b.len());
        for &l in b.letters() {
            let i = l.unsigned_abs() as usize;
            let (left_in, right_in) = (cur[i - 1], cur[i]);
            let (left_out, right_out) = (next, next + 1);
            next += 2;
            let c = if l > 0 {
                // Strands run upward; the left strand passes over to the right.
                Crossing::new([right_in, right_out, left_out, left_in], 1)
            } else {
                Crossing::new([left_in, right_in, right_out, left_out], -1)
            };
            crossings.push(c);
            cur[i - 1] = left_out;
            cur[i] = right_out;
        }
        let mut loops = 0;
        let mut rename = std::collections::HashMap::new();
        for (p, &top) in cur.iter().enumerate() {
            let bottom = p as u32 + 1;
            if top == bottom {
                loops += 1;
            } else {
                rename.insert(top, bottom);
            }
        }
        for c in &mut crossings {
            for a in &mut c.arcs {
                if let Some(&r) = rename.get(a) {
                    *a = r;
                }
            }
        }
        Self { crossings, loops }
    }

    fn check_id(&self, c: usize) -> Result<(), DiagramError> {
        if c >= self.crossings.len() {
            Err(DiagramError::UnknownCrossing(c))
        } else {
            Ok(())
        }
    }

    /// Exchange over and under at crossing `c`. Arc labels are unchanged.
    pub fn switch_crossing(&self, c: usize) -> Result<Self, DiagramError> {
        self.check_id(c)?;
        let mut out = self.clone();
        let x = &mut out.crossings[c];
        let [a, b, cc, d] = x.arcs;
        *x = if x.sign > 0 {
            Crossing::new([d, a, b, cc], -1)
        } else {
            Crossing::new([b, cc, d, a], 1)
        };
        Ok(out)
    }

    /// Oriented smoothing at crossing `c`: the crossing is removed and each
    /// incoming strand is joined to the other strand's outgoing arc. Merged
    /// arcs keep the smaller label; other crossings keep their order.
    pub fn smooth_crossing(&self, c: usize) -> Result<Self, DiagramError> {
        self.check_id(c)?;
        let x = self.crossings[c];
        let mut crossings: Vec<Crossing> = self.crossings.clone();
        crossings.remove(c);
        let mut loops = self.loops;
        let mut pairs = [(x.under_in(), x.over_out()), (x.over_in(), x.under_out())];
        for k in 0..2 {
            let (p, q) = pairs[k];
            if p == q {
                loops += 1;
                continue;
            }
            let (keep, drop) = (p.min(q), p.max(q));
            for cr in &mut crossings {
                for a in &mut cr.arcs {
                    if *a == drop {
                        *a = keep;
                    }
                }
            }
            for pair in pairs.iter_mut().skip(k + 1) {
                if pair.0 == drop {
                    pair.0 = keep;
                }
                if pair.1 == drop {
                    pair.1 = keep;
                }
            }
        }
        Ok(Self { crossings, loops })
    }

    /// Number of link components, crossingless circles included.
    pub fn components(&self) -> usize {
        self.component_cycles().len() + self.loops
    }

    /// Arc cycles of the crossed components, each starting at its smallest
    /// label, sorted by that label.
    pub(crate) fn component_cycles(&self) -> Vec<Vec<u32>> {
        self.component_cycles_with(&Topology::new(self))
    }

    pub(crate) fn component_cycles_with(&self, topo: &Topology) -> Vec<Vec<u32>> {
        let arcs = self.arcs();
        let size = self.max_label().map_or(0, |m| m as usize + 1);
        let mut seen = vec![false; size];
        let mut cycles = Vec::new();
        for &start in &arcs {
            if seen[start as usize] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut a = start;
            loop {
                seen[a as usize] = true;
                cyc.push(a);
                a = topo.next(self, a);
                if a == start {
                    break;
                }
            }
            cycles.push(cyc);
        }
        cycles
    }

    /// Reverse the orientation of every component.
    pub fn reversed(&self) -> Self {
        Self {
            crossings: self
                .crossings
                .iter()
                .map(|c| {
                    let [a, b, cc, d] = c.arcs;
                    Crossing::new([cc, d, a, b], c.sign)
                })
                .collect(),
            loops: self.loops,
        }
    }

    /// Apply an arc relabeling and reorder crossings (`order[k]` is the old
    /// index of new crossing `k`).
    pub fn relabeled(&self, arc_map: impl Fn(u32) -> u32, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.crossings.len());
        Self {
            crossings: order
                .iter()
                .map(|&i| {
                    let c = self.crossings[i];
                    Crossing::new(c.arcs.map(&arc_map), c.sign)
                })
                .collect(),
            loops: self.loops,
        }
    }

    /// A string that identifies the diagram up to arc and crossing labels,
    /// choice of traversal start, and reversal of all orientations.
    ///
    /// Each connected piece is re-encoded from every possible starting arc in
    /// both orientations and the lexicographically least encoding is kept.
    /// Encodings list every crossing, so equal keys mean isomorphic diagrams.
    pub fn canonical_key(&self) -> String {
        let rev = self.reversed();
        let topo_f = Topology::new(self);
        let topo_r = Topology::new(&rev);
        let mut pieces: Vec<Vec<u32>> = self
            .connected_pieces(&topo_f)
            .into_iter()
            .map(|arcs| {
                let mut best: Option<Vec<u32>> = None;
                for &s in &arcs {
                    for (d, t) in [(self, &topo_f), (&rev, &topo_r)] {
                        let enc = d.encode_from(t, s);
                        if best.as_ref().is_none_or(|b| enc < *b) {
                            best = Some(enc);
                        }
                    }
                }
                best.unwrap_or_default()
            })
            .collect();
        pieces.sort();
        let mut key = format!("L{}|", self.loops);
        for (i, p) in pieces.iter().enumerate() {
            if i > 0 {
                key.push('/');
            }
            for (j, v) in p.iter().enumerate() {
                if j > 0 {
                    key.push(',');
                }
                key.push_str(&v.to_string());
            }
        }
        key
    }

    /// Arc sets of the connected pieces of the crossing graph.
    fn connected_pieces(&self, topo: &Topology) -> Vec<Vec<u32>> {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let arcs = self.arcs();
        for &a in &arcs {
            let (h, _) = topo.head(a);
            let (t, _) = topo.tail(a);
            let (rh, rt) = (find(&mut parent, h), find(&mut parent, t));
            parent[rh] = rt;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
        for &a in &arcs {
            let (h, _) = topo.head(a);
            let r = find(&mut parent, h);
            groups.entry(r).or_default().push(a);
        }
        groups.into_values().collect()
    }

    /// Deterministic re-encoding of the piece containing `start`.
    fn encode_from(&self, topo: &Topology, start: u32) -> Vec<u32> {
        const UNSET: u32 = u32::MAX;
        let size = self.max_label().map_or(0, |m| m as usize + 1);
        let mut arc_id = vec![UNSET; size];
        let mut cross_id = vec![UNSET; self.crossings.len()];
        let mut order: Vec<usize> = Vec::new();
        let mut next_arc = 0u32;
        let mut scan = 0usize;
        let mut comp_start = Some(start);
        while let Some(s) = comp_start {
            let mut a = s;
            loop {
                if arc_id[a as usize] == UNSET {
                    arc_id[a as usize] = next_arc;
                    next_arc += 1;
                }
                let (c, slot) = topo.head(a);
                if cross_id[c] == UNSET {
                    cross_id[c] = order.len() as u32;
                    order.push(c);
                }
                a = self.crossings[c].arcs[Crossing::exit_slot(slot)];
                if a == s {
                    break;
                }
            }
            comp_start = None;
            while scan < order.len() {
                let c = &self.crossings[order[scan]];
                if let Some(&a) = c.arcs.iter().find(|&&a| arc_id[a as usize] == UNSET) {
                    comp_start = Some(a);
                    break;
                }
                scan += 1;
            }
        }
        let mut enc = Vec::with_capacity(order.len() * 5);
        for &c in &order {
            let x = &self.crossings[c];
            enc.extend(x.arcs.iter().map(|&a| arc_id[a as usize]));
            enc.push(u32::from(x.sign > 0));
        }
        enc
    }

    /// Faces of the surface obtained by thickening the diagram's 4-valent
    /// graph with the rotation at each crossing given by its slot order.
    pub fn face_count(&self) -> usize {
        let n = self.crossings.len();
        let topo = Topology::new(self);
        let mut seen = vec![[false; 4]; n];
        let mut faces = 0;
        for c0 in 0..n {
            for s0 in 0..4 {
                if seen[c0][s0] {
                    continue;
                }
                faces += 1;
                let (mut c, mut s) = (c0, s0);
                while !seen[c][s] {
                    seen[c][s] = true;
                    let arc = self.crossings[c].arcs[s];
                    let (oc, os) = if self.crossings[c].is_incoming(s) {
                        topo.tail(arc)
                    } else {
                        topo.head(arc)
                    };
                    c = oc;
                    s = (os + 1) % 4;
                }
            }
        }
        faces
    }

    /// Traversal record of a knot diagram. Crossings are numbered from 1 in
    /// order of first visit, starting on the smallest arc label.
    pub fn to_gauss(&self) -> Result<GaussCode, DiagramError> {
        let comps = self.components();
        if comps != 1 {
            return Err(DiagramError::NotAKnot(comps));
        }
        if self.crossings.is_empty() {
            return Ok(GaussCode::default());
        }
        let topo = Topology::new(self);
        let start = self.arcs()[0];
        let mut label = vec![0u32; self.crossings.len()];
        let mut next = 1;
        let mut entries = Vec::with_capacity(2 * self.crossings.len());
        let mut a = start;
        loop {
            let (c, slot) = topo.head(a);
            if label[c] == 0 {
                label[c] = next;
                next += 1;
            }
            let pass = if slot == 0 { Pass::Under } else { Pass::Over };
            entries.push(GaussEntry {
                pass,
                label: label[c],
                sign: self.crossings[c].sign,
            });
            a = self.crossings[c].arcs[Crossing::exit_slot(slot)];
            if a == start {
                break;
            }
        }
        Ok(GaussCode { entries })
    }

    /// Parse the line format `X a b c d s` (one crossing per line) with an
    /// optional `L k` line for crossingless circles.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut crossings = Vec::new();
        let mut loops = 0;
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || DiagramError::InvalidPd(format!("bad line `{line}`"));
            match toks.as_slice() {
                ["X", a, b, c, d, s] => {
                    let arcs = [a, b, c, d].map(|t| t.parse::<u32>());
                    let [Ok(a), Ok(b), Ok(c), Ok(d)] = arcs else {
                        return Err(bad());
                    };
                    let sign = match *s {
                        "+" | "1" | "+1" => 1,
                        "-" | "-1" => -1,
                        _ => return Err(bad()),
                    };
                    crossings.push(Crossing::new([a, b, c, d], sign));
                }
                ["L", k] => loops += k.parse::<usize>().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        Self::new(crossings, loops)
    }
}

impl fmt::Display for PDDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            let [a, b, cc, d] = c.arcs;
            writeln!(f, "X {a} {b} {cc} {d} {}", if c.sign > 0 { "+1" } else { "-1" })?;
        }
        if self.loops > 0 {
            writeln!(f, "L {}", self.loops)?;
        }
        Ok(())
    }
}

impl FromStr for PDDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Pass {
    Over,
    Under,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GaussEntry {
    pub pass: Pass,
    pub label: u32,
    pub sign: i8,
}

/// Signed Gauss code (intersection sequence) of a knot diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussCode {
    entries: Vec<GaussEntry>,
}

/// Cell counts of the carrier surface of a Gauss code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SurfaceStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl SurfaceStats {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

fn check_pairs(labels: impl Iterator<Item = (Pass, u32)>) -> Result<usize, DiagramError> {
    use std::collections::BTreeMap;
    let mut seen: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for (pass, l) in labels {
        let e = seen.entry(l).or_default();
        match pass {
            Pass::Over => e.0 += 1,
            Pass::Under => e.1 += 1,
        }
    }
    for (l, (o, u)) in &seen {
        if o + u != 2 {
            return Err(DiagramError::LabelCount(*l));
        }
        if *o != 1 {
            return Err(DiagramError::OverUnderImbalance(*l));
        }
    }
    Ok(seen.len())
}

impl GaussCode {
    pub fn new(entries: Vec<GaussEntry>) -> Result<Self, DiagramError> {
        check_pairs(entries.iter().map(|e| (e.pass, e.label)))?;
        for e in &entries {
            if e.sign != 1 && e.sign != -1 {
                return Err(DiagramError::SignConflict(e.label));
            }
            let other = entries.iter().find(|f| f.label == e.label && f.pass != e.pass);
            if other.is_some_and(|f| f.sign != e.sign) {
                return Err(DiagramError::SignConflict(e.label));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[GaussEntry] {
        &self.entries
    }

    pub fn crossing_count(&self) -> usize {
        self.entries.len() / 2
    }

    /// Parse tokens `[OU]<label>[+-]`, optionally separated by whitespace or
    /// commas, e.g. `O1+U2+O3+U1+O2+U3+`.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut entries = Vec::new();
        for (pass, label, sign, tok) in tokenize_gauss(text, true)? {
            let sign = sign.ok_or(DiagramError::MalformedGauss(tok))?;
            entries.push(GaussEntry { pass, label, sign });
        }
        Self::new(entries)
    }

    /// The diagram this code describes. Arc `k` runs from entry `k` to entry
    /// `k + 1`. Fails unless the code is realizable.
    pub fn to_diagram(&self) -> Result<PDDiagram, DiagramError> {
        if self.entries.is_empty() {
            return Ok(PDDiagram::unknot());
        }
        let d = self.carrier_diagram();
        if !self.realizable() {
            return Err(DiagramError::NotRealizable);
        }
        Ok(d)
    }

    /// PD records built directly from the code; planar only when the code
    /// is realizable.
    fn carrier_diagram(&self) -> PDDiagram {
        let len = self.entries.len() as u32;
        let arc_in = |k: usize| ((k as u32 + len - 1) % len) + 1;
        let arc_out = |k: usize| k as u32 + 1;
        let mut order: Vec<u32> = Vec::new();
        for e in &self.entries {
            if !order.contains(&e.label) {
                order.push(e.label);
            }
        }
        let crossings = order
            .iter()
            .map(|&l| {
                let pos = |p: Pass| {
                    self.entries
                        .iter()
                        .position(|e| e.label == l && e.pass == p)
                        .unwrap_or(0)
                };
                let (o, u) = (pos(Pass::Over), pos(Pass::Under));
                let sign = self.entries[o].sign;
                let (ui, uo, oi, oo) = (arc_in(u), arc_out(u), arc_in(o), arc_out(o));
                if sign > 0 {
                    Crossing::new([ui, oo, uo, oi], 1)
                } else {
                    Crossing::new([ui, oi, uo, oo], -1)
                }
            })
            .collect();
        PDDiagram { crossings, loops: 0 }
    }

    pub fn surface(&self) -> SurfaceStats {
        let c = self.crossing_count();
        if c == 0 {
            // A single circle in the sphere.
            return SurfaceStats {
                vertices: 0,
                edges: 0,
                faces: 2,
            };
        }
        SurfaceStats {
            vertices: c,
            edges: 2 * c,
            faces: self.carrier_diagram().face_count(),
        }
    }

    /// True iff the carrier surface is a sphere.
    pub fn realizable(&self) -> bool {
        self.surface().euler_characteristic() == 2
    }

    /// Cyclic rotation of the traversal start.
    pub fn rotated(&self, k: usize) -> Self {
        let mut entries = self.entries.clone();
        if !entries.is_empty() {
            let k = k % entries.len();
            entries.rotate_left(k);
        }
        Self { entries }
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let p = if e.pass == Pass::Over { 'O' } else { 'U' };
            let s = if e.sign > 0 { '+' } else { '-' };
            write!(f, "{p}{}{s}", e.label)?;
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

type GaussToken = (Pass, u32, Option<i8>, String);

fn tokenize_gauss(text: &str, signed: bool) -> Result<Vec<GaussToken>, DiagramError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() || ch == ',' {
            i += 1;
            continue;
        }
        let start = i;
        let pass = match ch.to_ascii_uppercase() {
            'O' => Pass::Over,
            'U' => Pass::Under,
            _ => return Err(DiagramError::MalformedGauss(ch.to_string())),
        };
        i += 1;
        let digits_start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let digits: String = chars[digits_start..i].iter().collect();
        let mut sign = None;
        if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            sign = Some(if chars[i] == '+' { 1 } else { -1 });
            i += 1;
        }
        let tok: String = chars[start..i].iter().collect();
        let label: u32 = digits.parse().map_err(|_| DiagramError::MalformedGauss(tok.clone()))?;
        if signed && sign.is_none() || !signed && sign.is_some() {
            return Err(DiagramError::MalformedGauss(tok));
        }
        out.push((pass, label, sign, tok));
    }
    Ok(out)
}

/// Parse an unsigned sequence such as `O1 U2 O3 U1 O2 U3`.
pub fn parse_unsigned_gauss(text: &str) -> Result<Vec<(Pass, u32)>, DiagramError> {
    let seq: Vec<(Pass, u32)> = tokenize_gauss(text, false)?
        .into_iter()
        .map(|(p, l, _, _)| (p, l))
        .collect();
    check_pairs(seq.iter().copied())?;
    Ok(seq)
}

/// Largest crossing count accepted by [`realizable_unsigned`].
pub const UNSIGNED_GUARD: usize = 16;

/// Whether some choice of crossing signs makes the sequence realizable.
/// Exhaustive over all `2^c` signings.
pub fn realizable_unsigned(seq: &[(Pass, u32)]) -> Result<bool, DiagramError> {
    let c = check_pairs(seq.iter().copied())?;
    if c > UNSIGNED_GUARD {
        return Err(DiagramError::GuardExceeded(c, UNSIGNED_GUARD));
    }
    if c == 0 {
        return Ok(true);
    }
    let mut labels: Vec<u32> = seq.iter().map(|(_, l)| *l).collect();
    labels.sort_unstable();
    labels.dedup();
    for mask in 0u32..(1 << c) {
        let entries = seq
            .iter()
            .map(|&(pass, label)| {
                let bit = labels.binary_search(&label).unwrap_or(0);
                let sign = if mask >> bit & 1 == 1 { -1 } else { 1 };
                GaussEntry { pass, label, sign }
            })
            .collect();
        if (GaussCode { entries }).realizable() {
            return Ok(true);
        }
    }
    Ok(false)
}
