//! Small knot tables: braid words grouped by Jones polynomial.

use std::collections::BTreeMap;

use knot_core::skein::{SkeinEngine, SkeinError};
use knot_core::{BraidWord, LaurentPoly2, PDDiagram};
use rayon::prelude::*;

pub const MAX_STRANDS: usize = 4;
pub const MAX_LENGTH: usize = 10;

#[derive(Clone, Debug)]
pub struct TableGroup {
    pub jones: String,
    pub homfly: String,
    /// Sorted by length, then letters; the first member is the representative.
    pub members: Vec<BraidWord>,
}

impl TableGroup {
    pub fn representative(&self) -> &BraidWord {
        &self.members[0]
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    /// Freely and cyclically reduced words, one per rotation class.
    pub words: usize,
    /// Of those, the words whose closure is a knot.
    pub knots: usize,
    pub groups: Vec<TableGroup>,
}

impl Table {
    /// Group containing a word with this Jones polynomial text.
    pub fn group_of(&self, jones: &str) -> Option<&TableGroup> {
        self.groups.iter().find(|g| g.jones == jones)
    }
}

/// Words with no adjacent inverse pair, cyclically included, that are the
/// least among their rotations.
pub fn enumerate(strands: usize, max_len: usize) -> Vec<BraidWord> {
    let m = strands.saturating_sub(1) as i32;
    let alphabet: Vec<i32> = (1..=m).flat_map(|g| [-g, g]).collect();
    let mut out = vec![BraidWord::identity(strands.max(1))];
    let mut word = Vec::with_capacity(max_len);
    fn dfs(word: &mut Vec<i32>, alphabet: &[i32], max_len: usize, strands: usize, out: &mut Vec<BraidWord>) {
        if !word.is_empty() && is_cyclic_representative(word) {
            out.push(BraidWord::new(strands, word.clone()).expect("letters in range"));
        }
        if word.len() == max_len {
            return;
        }
        for &l in alphabet {
            if word.last() == Some(&-l) || word.first().is_some_and(|&f| l < f) {
                continue;
            }
            word.push(l);
            dfs(word, alphabet, max_len, strands, out);
            word.pop();
        }
    }
    if m > 0 {
        dfs(&mut word, &alphabet, max_len, strands, &mut out);
    }
    out
}

fn is_cyclic_representative(w: &[i32]) -> bool {
    let n = w.len();
    if n > 1 && w[0] == -w[n - 1] {
        return false;
    }
    (1..n).all(|r| {
        let rotated = w[r..].iter().chain(&w[..r]);
        rotated.cmp(w.iter()) != std::cmp::Ordering::Less
    })
}

pub fn knot_table(strands: usize, max_len: usize, engine: &SkeinEngine) -> Result<Table, SkeinError> {
    let words = enumerate(strands, max_len);
    let knots: Vec<BraidWord> = words.iter().filter(|b| b.closure_components() == 1).cloned().collect();
    let values: Vec<(BraidWord, LaurentPoly2)> = knots
        .par_iter()
        .map(|b| Ok((b.clone(), engine.homfly(&PDDiagram::from_braid(b))?)))
        .collect::<Result<_, SkeinError>>()?;
    let mut groups: BTreeMap<String, TableGroup> = BTreeMap::new();
    for (b, h) in values {
        let jones = h.specialize_jones()?.to_string();
        let g = groups.entry(jones.clone()).or_insert_with(|| TableGroup {
            jones,
            homfly: h.to_string(),
            members: Vec::new(),
        });
        g.members.push(b);
    }
    let mut groups: Vec<TableGroup> = groups.into_values().collect();
    for g in &mut groups {
        g.members
            .sort_by(|x, y| (x.len(), x.letters()).cmp(&(y.len(), y.letters())));
    }
    groups.sort_by(|x, y| {
        let (a, b) = (x.representative(), y.representative());
        (a.len(), a.letters()).cmp(&(b.len(), b.letters()))
    });
    Ok(Table {
        words: words.len(),
        knots: knots.len(),
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use knot_core::skein::SkeinBudget;

    #[test]
    fn enumeration_is_reduced_and_rotation_free() {
        let words = enumerate(3, 6);
        for b in &words {
            assert_eq!(b.free_reduce(), *b);
            let l = b.letters();
            for r in 1..l.len() {
                let mut rot = l.to_vec();
                rot.rotate_left(r);
                assert!(rot.as_slice() >= l);
            }
        }
        // Every reduced word of length ≤ 6 has a rotation among the output.
        let n = enumerate(2, 4).len();
        assert_eq!(n, 1 + 2 * 4);
    }

    #[test]
    fn two_strand_table() {
        let engine = SkeinEngine::new(SkeinBudget::default());
        let t = knot_table(2, 4, &engine).unwrap();
        assert_eq!(t.knots, 4);
        assert_eq!(t.groups.len(), 3);
        assert_eq!(t.groups[0].jones, "1");
        assert_eq!(t.groups[0].members.len(), 2);
        let tref = t.group_of("s^2 + s^6 - s^8").unwrap();
        let mirror = t
            .groups
            .iter()
            .find(|g| g.representative().letters() == [-1, -1, -1])
            .unwrap();
        assert_eq!(tref.representative().letters(), &[1, 1, 1]);
        assert_ne!(tref.jones, mirror.jones);
    }
}
