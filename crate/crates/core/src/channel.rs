//! Strings, edit operations, and channel output/preimage enumeration.
//!
//! A channel is described by the set of outputs it can produce from an
//! input. Two inputs that share an output are "confusable"; the confusion
//! graph over all length-n inputs (adjacent iff confusable) and the
//! confusion hypergraph (one edge per output, containing its preimage) are
//! the structures every code in this crate colors or labels.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A length-n string over the alphabet {0..q-1}.
///
/// Positions are 1-indexed in documentation to match the usual coding-theory
/// convention; slices are 0-indexed as normal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QaryString {
    symbols: Vec<u32>,
    q: u32,
}

impl QaryString {
    pub fn new(symbols: Vec<u32>, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidInput(format!("alphabet size {q} < 2")));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidInput(format!("symbol {bad} >= alphabet {q}")));
        }
        Ok(QaryString { symbols, q })
    }

    /// Binary string from bits.
    pub fn from_bits(bits: &[u8]) -> Self {
        QaryString {
            symbols: bits.iter().map(|&b| u32::from(b)).collect(),
            q: 2,
        }
    }

    /// Parses the wire format: ASCII digits for q <= 10, comma-separated
    /// decimal symbols otherwise.
    pub fn parse(text: &str, q: u32) -> Result<Self> {
        let symbols: Vec<u32> = if q <= 10 {
            text.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidInput(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        } else if text.trim().is_empty() {
            Vec::new()
        } else {
            text.trim()
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidInput(format!("bad symbol {part:?}")))
                })
                .collect::<Result<_>>()?
        };
        QaryString::new(symbols, q)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// The string read as a base-q integer, first symbol most significant.
    pub fn base_q_value(&self) -> u64 {
        let mut acc = 0u64;
        for &s in &self.symbols {
            acc = acc * self.q as u64 + s as u64;
        }
        acc
    }

    /// Inverse of `base_q_value` at fixed width.
    pub fn from_base_q_value(mut value: u64, len: usize, q: u32) -> Self {
        let mut symbols = vec![0u32; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (value % q as u64) as u32;
            value /= q as u64;
        }
        debug_assert_eq!(value, 0);
        QaryString { symbols, q }
    }

    pub fn concat(&self, other: &QaryString) -> QaryString {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        QaryString { symbols, q: self.q }
    }

    pub fn slice(&self, start: usize, end: usize) -> QaryString {
        QaryString {
            symbols: self.symbols[start.min(self.len())..end.min(self.len())].to_vec(),
            q: self.q,
        }
    }

    fn delete(&self, idx: usize) -> QaryString {
        let mut symbols = self.symbols.clone();
        symbols.remove(idx);
        QaryString { symbols, q: self.q }
    }

    fn insert(&self, idx: usize, symbol: u32) -> QaryString {
        let mut symbols = self.symbols.clone();
        symbols.insert(idx, symbol);
        QaryString { symbols, q: self.q }
    }

    fn substitute(&self, idx: usize, symbol: u32) -> QaryString {
        let mut symbols = self.symbols.clone();
        symbols[idx] = symbol;
        QaryString { symbols, q: self.q }
    }

    /// Deletes the run of `len` symbols starting at 0-indexed `start`.
    pub fn delete_run(&self, start: usize, len: usize) -> QaryString {
        let mut symbols = Vec::with_capacity(self.len() - len);
        symbols.extend_from_slice(&self.symbols[..start]);
        symbols.extend_from_slice(&self.symbols[start + len..]);
        QaryString { symbols, q: self.q }
    }

    /// Replaces the substring `[start, start+del_len)` with `replacement`.
    pub fn splice(&self, start: usize, del_len: usize, replacement: &[u32]) -> QaryString {
        let mut symbols = Vec::with_capacity(self.len() - del_len + replacement.len());
        symbols.extend_from_slice(&self.symbols[..start]);
        symbols.extend_from_slice(replacement);
        symbols.extend_from_slice(&self.symbols[start + del_len..]);
        QaryString { symbols, q: self.q }
    }
}

impl PartialOrd for QaryString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QaryString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.symbols.cmp(&other.symbols)
    }
}

impl fmt::Display for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}:{}", self.q, self)
    }
}

/// Which single-symbol operations count as one edit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum EditRepertoire {
    /// Insertions and deletions only; a substitution costs two edits.
    InsDel,
    /// Insertions, deletions, and substitutions.
    InsDelSub,
}

impl EditRepertoire {
    pub fn as_str(self) -> &'static str {
        match self {
            EditRepertoire::InsDel => "ins-del",
            EditRepertoire::InsDelSub => "ins-del-sub",
        }
    }
}

/// The error process applied to the channel input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Up to k single-symbol edits (per the repertoire).
    Edits { k: usize },
    /// Exactly k symbol deletions, the classical deletion channel.
    Deletions { k: usize },
    /// One run of 0..=max_len consecutive symbols deleted.
    BurstDeletion { max_len: usize },
    /// k replacements of a substring of length <= max_len by a string of
    /// length <= max_len.
    SubstringEdits { k: usize, max_len: usize },
}

/// A channel: error kind, alphabet, and edit repertoire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelModel {
    pub kind: ChannelKind,
    pub q: u32,
    pub repertoire: EditRepertoire,
}

impl ChannelModel {
    pub fn edits(k: usize, q: u32, repertoire: EditRepertoire) -> Self {
        ChannelModel {
            kind: ChannelKind::Edits { k },
            q,
            repertoire,
        }
    }

    pub fn deletions(k: usize, q: u32) -> Self {
        ChannelModel {
            kind: ChannelKind::Deletions { k },
            q,
            repertoire: EditRepertoire::InsDel,
        }
    }

    pub fn burst_deletion(max_len: usize, q: u32) -> Self {
        ChannelModel {
            kind: ChannelKind::BurstDeletion { max_len },
            q,
            repertoire: EditRepertoire::InsDel,
        }
    }

    pub fn substring_edits(k: usize, max_len: usize, q: u32) -> Self {
        ChannelModel {
            kind: ChannelKind::SubstringEdits { k, max_len },
            q,
            repertoire: EditRepertoire::InsDel,
        }
    }
}

/// Minimum number of edits (per the repertoire) transforming `x` into `y`.
pub fn edit_distance(x: &QaryString, y: &QaryString, repertoire: EditRepertoire) -> usize {
    let sub_cost = match repertoire {
        EditRepertoire::InsDel => 2,
        EditRepertoire::InsDelSub => 1,
    };
    let n = x.len();
    let m = y.len();
    let mut prev: Vec<usize> = (0..=m).collect();
    let mut cur = vec![0usize; m + 1];
    for i in 1..=n {
        cur[0] = i;
        for j in 1..=m {
            let diag = if x.symbols[i - 1] == y.symbols[j - 1] {
                0
            } else {
                sub_cost
            };
            cur[j] = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + diag);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// All distinct results of one edit applied to `x`.
pub fn single_edits(x: &QaryString, repertoire: EditRepertoire) -> Vec<QaryString> {
    let mut out = HashSet::new();
    for i in 0..x.len() {
        out.insert(x.delete(i));
    }
    for i in 0..=x.len() {
        for s in 0..x.q {
            out.insert(x.insert(i, s));
        }
    }
    if repertoire == EditRepertoire::InsDelSub {
        for i in 0..x.len() {
            for s in 0..x.q {
                if s != x.symbols[i] {
                    out.insert(x.substitute(i, s));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// The ball B_t(x): all strings of any length within edit distance `t`,
/// including `x`, by iterated single-edit expansion with deduplication.
pub fn ball(x: &QaryString, t: usize, repertoire: EditRepertoire) -> HashSet<QaryString> {
    let mut all: HashSet<QaryString> = HashSet::new();
    all.insert(x.clone());
    let mut frontier: Vec<QaryString> = vec![x.clone()];
    for _ in 0..t {
        let mut next = Vec::new();
        for s in &frontier {
            for e in single_edits(s, repertoire) {
                if all.insert(e.clone()) {
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    all
}

/// Calls `f` on every q-ary word of the given length.
pub fn for_each_word(q: u32, len: usize, mut f: impl FnMut(&[u32])) {
    let total = (q as u64).pow(len as u32);
    let mut word = vec![0u32; len];
    for mut v in 0..total {
        for slot in word.iter_mut().rev() {
            *slot = (v % q as u64) as u32;
            v /= q as u64;
        }
        f(&word);
    }
}

/// All distinct results of one substring edit (replace a substring of length
/// <= max_len by a string of length <= max_len).
pub fn single_substring_edits(x: &QaryString, max_len: usize) -> Vec<QaryString> {
    let mut out = HashSet::new();
    for start in 0..=x.len() {
        for del_len in 0..=max_len.min(x.len() - start) {
            for ins_len in 0..=max_len {
                for_each_word(x.q, ins_len, |replacement| {
                    out.insert(x.splice(start, del_len, replacement));
                });
            }
        }
    }
    out.into_iter().collect()
}

fn iterated_substring_edits(x: &QaryString, k: usize, max_len: usize) -> HashSet<QaryString> {
    let mut all: HashSet<QaryString> = HashSet::new();
    all.insert(x.clone());
    let mut frontier = vec![x.clone()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            for e in single_substring_edits(s, max_len) {
                if all.insert(e.clone()) {
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    all
}

/// Exactly the channel output set E(x).
pub fn channel_outputs(model: &ChannelModel, x: &QaryString) -> HashSet<QaryString> {
    match model.kind {
        ChannelKind::Edits { k } => ball(x, k, model.repertoire),
        ChannelKind::Deletions { k } => {
            let mut cur: HashSet<QaryString> = HashSet::new();
            cur.insert(x.clone());
            for _ in 0..k {
                let mut next = HashSet::new();
                for s in &cur {
                    for i in 0..s.len() {
                        next.insert(s.delete(i));
                    }
                }
                cur = next;
            }
            cur
        }
        ChannelKind::BurstDeletion { max_len } => {
            let mut out = HashSet::new();
            out.insert(x.clone());
            for len in 1..=max_len.min(x.len()) {
                for start in 0..=x.len() - len {
                    out.insert(x.delete_run(start, len));
                }
            }
            out
        }
        ChannelKind::SubstringEdits { k, max_len } => iterated_substring_edits(x, k, max_len),
    }
}

/// All length-n inputs x with y in E(x). Empty if y is not reachable from
/// any length-n input.
pub fn channel_preimage(model: &ChannelModel, y: &QaryString, n: usize) -> HashSet<QaryString> {
    match model.kind {
        // Edits are symmetric: y within k edits of x iff x within k of y.
        ChannelKind::Edits { k } => ball(y, k, model.repertoire)
            .into_iter()
            .filter(|s| s.len() == n)
            .collect(),
        ChannelKind::Deletions { k } => {
            if y.len() + k != n {
                return HashSet::new();
            }
            let mut cur: HashSet<QaryString> = HashSet::new();
            cur.insert(y.clone());
            for _ in 0..k {
                let mut next = HashSet::new();
                for s in &cur {
                    for i in 0..=s.len() {
                        for sym in 0..model.q {
                            next.insert(s.insert(i, sym));
                        }
                    }
                }
                cur = next;
            }
            cur
        }
        ChannelKind::BurstDeletion { max_len } => {
            if y.len() > n || n - y.len() > max_len {
                return HashSet::new();
            }
            let d = n - y.len();
            let mut out = HashSet::new();
            if d == 0 {
                out.insert(y.clone());
                return out;
            }
            for start in 0..=y.len() {
                for_each_word(model.q, d, |run| {
                    out.insert(y.splice(start, 0, run));
                });
            }
            out
        }
        ChannelKind::SubstringEdits { k, max_len } => {
            // substring edits are symmetric under swapping the deleted and
            // inserted substrings
            iterated_substring_edits(y, k, max_len)
                .into_iter()
                .filter(|s| s.len() == n)
                .collect()
        }
    }
}

/// `ballBound(n, t, q)`: closed-form upper bound on |B_t(x)| for |x| = n,
/// composing a per-edit parameterization count t times.
pub fn ball_bound(n: usize, t: usize, q: u32) -> u64 {
    let per_step = ((n + t + 1) as u64) * (q as u64 + 1) + 1;
    per_step.pow(t as u32)
}

/// An explicit view of the confusion graph for a channel at block length n:
/// vertices are all length-n strings, adjacent iff they share an output.
#[derive(Debug, Clone)]
pub struct GraphView {
    pub n: usize,
    pub model: ChannelModel,
}

impl GraphView {
    pub fn new(n: usize, model: ChannelModel) -> Self {
        GraphView { n, model }
    }

    /// Uniform upper bound on the maximum degree, a function of the class
    /// (n, q, model) only, never of a particular vertex.
    pub fn degree_bound(&self) -> u64 {
        let n = self.n;
        let q = self.model.q;
        match self.model.kind {
            ChannelKind::Edits { k } | ChannelKind::Deletions { k } => {
                ball_bound(n, 2 * k, q).saturating_sub(1)
            }
            ChannelKind::BurstDeletion { max_len } => {
                (max_len as u64 + 1) * (n as u64 + 1) * ((n + max_len + 1) as u64)
            }
            ChannelKind::SubstringEdits { k, max_len } => {
                let base = (n as u64 + 1) * ((max_len as u64 + 1) * (max_len as u64 + 1));
                base.pow(2 * k as u32)
            }
        }
    }

    /// All v != x whose outputs intersect E(x), sorted lexicographically.
    /// The i-th neighbor of x is position i of this list.
    pub fn neighbors(&self, x: &QaryString) -> Vec<QaryString> {
        debug_assert_eq!(x.len(), self.n);
        let mut set: HashSet<QaryString> = match self.model.kind {
            // For edit channels adjacency is exactly edit distance <= 2k.
            ChannelKind::Edits { k } => ball(x, 2 * k, self.model.repertoire)
                .into_iter()
                .filter(|v| v.len() == self.n)
                .collect(),
            _ => {
                let mut acc = HashSet::new();
                for y in channel_outputs(&self.model, x) {
                    acc.extend(channel_preimage(&self.model, &y, self.n));
                }
                acc
            }
        };
        set.remove(x);
        let mut out: Vec<QaryString> = set.into_iter().collect();
        out.sort();
        out
    }
}

/// An explicit view of the confusion hypergraph: one edge per channel output
/// y, identified by y itself, containing the preimage of y.
#[derive(Debug, Clone)]
pub struct HypergraphView {
    pub n: usize,
    pub model: ChannelModel,
}

impl HypergraphView {
    pub fn new(n: usize, model: ChannelModel) -> Self {
        HypergraphView { n, model }
    }

    /// Upper bound on the number of edges containing a vertex (the number of
    /// distinct outputs).
    pub fn degree_bound(&self) -> u64 {
        match self.model.kind {
            ChannelKind::Edits { k } | ChannelKind::Deletions { k } => {
                ball_bound(self.n, k, self.model.q)
            }
            ChannelKind::BurstDeletion { max_len } => {
                (max_len as u64 + 1) * (self.n as u64 + 1)
            }
            ChannelKind::SubstringEdits { k, max_len } => {
                let per = (self.n as u64 + 1)
                    * (max_len as u64 + 1)
                    * pow_u64(self.model.q as u64, max_len as u32 + 1);
                per.pow(k as u32)
            }
        }
    }

    /// Upper bound on the size of an edge (the largest output preimage).
    pub fn edge_size_bound(&self) -> u64 {
        match self.model.kind {
            ChannelKind::Edits { k } => ball_bound(self.n + k, k, self.model.q),
            ChannelKind::Deletions { k } => ball_bound(self.n, k, self.model.q),
            ChannelKind::BurstDeletion { max_len } => {
                let d = max_len as u64;
                (self.n as u64 + 1) * pow_u64(self.model.q as u64, d as u32)
            }
            ChannelKind::SubstringEdits { k, max_len } => {
                ball_bound(self.n + k * max_len, k * max_len, self.model.q)
            }
        }
    }

    /// Edge ids (= outputs) containing x, sorted.
    pub fn edges_containing(&self, x: &QaryString) -> Vec<QaryString> {
        let mut out: Vec<QaryString> = channel_outputs(&self.model, x).into_iter().collect();
        out.sort();
        out
    }

    /// Vertices of the edge identified by output `y`, sorted. Errors if the
    /// edge is empty (y is not a possible output at this length).
    pub fn edge_vertices(&self, y: &QaryString) -> Result<Vec<QaryString>> {
        let set = channel_preimage(&self.model, y, self.n);
        if set.is_empty() {
            return Err(Error::InvalidInput(format!(
                "{y} is not an output of any length-{} input",
                self.n
            )));
        }
        let mut out: Vec<QaryString> = set.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    base.saturating_pow(exp)
}

// --- Edit scripts ---

/// One step of a replayable corruption script. Positions are 1-indexed and
/// refer to the current string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditOp {
    /// `d<pos>`: delete the symbol at `pos`.
    Delete { pos: usize },
    /// `i<pos>:<sym>`: insert `sym` so that it lands at `pos`.
    Insert { pos: usize, symbol: u32 },
    /// `s<pos>:<sym>`: substitute the symbol at `pos` with `sym`.
    Substitute { pos: usize, symbol: u32 },
}

/// Parses scripts like `d5;i3:1;s7:0`.
pub fn parse_edit_script(text: &str) -> Result<Vec<EditOp>> {
    let mut ops = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (op, rest) = part.split_at(1);
        let bad = || Error::InvalidInput(format!("bad edit op {part:?}"));
        match op {
            "d" => {
                let pos = rest.parse::<usize>().map_err(|_| bad())?;
                ops.push(EditOp::Delete { pos });
            }
            "i" | "s" => {
                let (pos_text, sym_text) = rest.split_once(':').ok_or_else(bad)?;
                let pos = pos_text.parse::<usize>().map_err(|_| bad())?;
                let symbol = sym_text.parse::<u32>().map_err(|_| bad())?;
                if op == "i" {
                    ops.push(EditOp::Insert { pos, symbol });
                } else {
                    ops.push(EditOp::Substitute { pos, symbol });
                }
            }
            _ => return Err(bad()),
        }
    }
    Ok(ops)
}

/// Applies a script to a string, reporting position violations.
pub fn apply_edit_script(x: &QaryString, ops: &[EditOp]) -> Result<QaryString> {
    let mut cur = x.clone();
    for op in ops {
        cur = match *op {
            EditOp::Delete { pos } => {
                if pos == 0 || pos > cur.len() {
                    return Err(Error::InvalidInput(format!("delete position {pos} out of range")));
                }
                cur.delete(pos - 1)
            }
            EditOp::Insert { pos, symbol } => {
                if pos == 0 || pos > cur.len() + 1 || symbol >= cur.q() {
                    return Err(Error::InvalidInput(format!("insert {pos}:{symbol} out of range")));
                }
                cur.insert(pos - 1, symbol)
            }
            EditOp::Substitute { pos, symbol } => {
                if pos == 0 || pos > cur.len() || symbol >= cur.q() {
                    return Err(Error::InvalidInput(format!(
                        "substitute {pos}:{symbol} out of range"
                    )));
                }
                cur.substitute(pos - 1, symbol)
            }
        };
    }
    Ok(cur)
}

/// All length-n strings over {0..q-1}, lexicographic. Desk-scale helper for
/// the exhaustive suites.
pub fn all_strings(n: usize, q: u32) -> Vec<QaryString> {
    let total = (q as u64).pow(n as u32);
    (0..total)
        .map(|v| QaryString::from_base_q_value(v, n, q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> QaryString {
        QaryString::parse(text, 2).unwrap()
    }

    fn s3(text: &str) -> QaryString {
        QaryString::parse(text, 3).unwrap()
    }

    /// Brute-force BFS oracle for edit distance.
    fn bfs_edit_distance(x: &QaryString, y: &QaryString, rep: EditRepertoire) -> usize {
        let mut frontier: HashSet<QaryString> = HashSet::new();
        frontier.insert(x.clone());
        let mut seen = frontier.clone();
        let mut dist = 0;
        loop {
            if frontier.contains(y) {
                return dist;
            }
            dist += 1;
            let mut next = HashSet::new();
            for u in &frontier {
                // prune: never useful to grow beyond |y| + remaining budget
                for e in single_edits(u, rep) {
                    if e.len() <= y.len() + 6 && seen.insert(e.clone()) {
                        next.insert(e);
                    }
                }
            }
            frontier = next;
            assert!(dist < 12, "oracle runaway");
        }
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance(&s("010"), &s("01"), EditRepertoire::InsDelSub), 1);
        let x = s("0110");
        assert_eq!(edit_distance(&x, &x, EditRepertoire::InsDelSub), 0);
        assert_eq!(
            edit_distance(&s("0101"), &s("1010"), EditRepertoire::InsDel),
            bfs_edit_distance(&s("0101"), &s("1010"), EditRepertoire::InsDel)
        );
        assert_eq!(edit_distance(&s("0101"), &s("1010"), EditRepertoire::InsDel), 2);
    }

    #[test]
    fn edit_distance_matches_bfs_oracle() {
        let strings: Vec<QaryString> = all_strings(3, 2)
            .into_iter()
            .chain(all_strings(4, 2))
            .collect();
        for rep in [EditRepertoire::InsDel, EditRepertoire::InsDelSub] {
            for x in &strings {
                for y in &strings {
                    assert_eq!(
                        edit_distance(x, y, rep),
                        bfs_edit_distance(x, y, rep),
                        "{x} vs {y} ({rep:?})"
                    );
                }
            }
        }
    }

    #[test]
    fn ball_examples() {
        let x = s("0110");
        let b0 = ball(&x, 0, EditRepertoire::InsDelSub);
        assert_eq!(b0.len(), 1);
        assert!(b0.contains(&x));

        let b = ball(&s("0"), 1, EditRepertoire::InsDelSub);
        let expect: HashSet<QaryString> = ["0", "", "1", "00", "01", "10"]
            .iter()
            .map(|t| s(t))
            .collect();
        assert_eq!(b, expect);

        // iterated-expansion count matches direct enumeration over a window
        let center = s("0101");
        let b1 = ball(&center, 1, EditRepertoire::InsDel);
        let mut oracle = 0usize;
        for len in 3..=5usize {
            for v in all_strings(len, 2) {
                if edit_distance(&center, &v, EditRepertoire::InsDel) <= 1 {
                    oracle += 1;
                }
            }
        }
        assert_eq!(b1.len(), oracle);
    }

    #[test]
    fn one_deletion_outputs_match_example() {
        let model = ChannelModel::deletions(1, 2);
        let outs = channel_outputs(&model, &s("010"));
        let expect: HashSet<QaryString> = ["01", "00", "10"].iter().map(|t| s(t)).collect();
        assert_eq!(outs, expect);
    }

    #[test]
    fn zero_edits_is_identity_channel() {
        let model = ChannelModel::edits(0, 2, EditRepertoire::InsDelSub);
        let x = s("0110");
        let outs = channel_outputs(&model, &x);
        assert_eq!(outs.len(), 1);
        assert!(outs.contains(&x));
        let pre = channel_preimage(&model, &x, 4);
        assert_eq!(pre.len(), 1);
        assert!(pre.contains(&x));
    }

    #[test]
    fn burst_deletion_outputs_example() {
        let model = ChannelModel::burst_deletion(2, 2);
        let outs = channel_outputs(&model, &s("110"));
        let expect: HashSet<QaryString> = ["110", "10", "0", "11", "1"].iter().map(|t| s(t)).collect();
        assert_eq!(outs, expect);
    }

    #[test]
    fn one_deletion_preimage_matches_example() {
        let model = ChannelModel::deletions(1, 2);
        let pre = channel_preimage(&model, &s("01"), 3);
        let expect: HashSet<QaryString> = ["001", "010", "011", "101"].iter().map(|t| s(t)).collect();
        assert_eq!(pre, expect);
    }

    #[test]
    fn one_edit_preimage_length_one() {
        let model = ChannelModel::edits(1, 2, EditRepertoire::InsDelSub);
        let pre = channel_preimage(&model, &s("0"), 1);
        let expect: HashSet<QaryString> = ["0", "1"].iter().map(|t| s(t)).collect();
        assert_eq!(pre, expect);
    }

    #[test]
    fn deletion_graph_neighbors_match_figure() {
        let view = GraphView::new(3, ChannelModel::deletions(1, 2));
        let nbrs = view.neighbors(&s("000"));
        assert_eq!(nbrs, vec![s("001"), s("010"), s("100")]);
        let nbrs = view.neighbors(&s("010"));
        assert_eq!(
            nbrs,
            vec![s("000"), s("001"), s("011"), s("100"), s("101"), s("110")]
        );
    }

    #[test]
    fn graph_symmetry_and_output_consistency() {
        for model in [
            ChannelModel::deletions(1, 2),
            ChannelModel::edits(1, 2, EditRepertoire::InsDelSub),
            ChannelModel::edits(1, 2, EditRepertoire::InsDel),
            ChannelModel::burst_deletion(2, 2),
        ] {
            for n in 2..=5usize {
                let view = GraphView::new(n, model);
                let vertices = all_strings(n, 2);
                let mut adj: Vec<Vec<QaryString>> = Vec::new();
                for x in &vertices {
                    adj.push(view.neighbors(x));
                }
                for (i, x) in vertices.iter().enumerate() {
                    let outs_x = channel_outputs(&model, x);
                    for (j, v) in vertices.iter().enumerate() {
                        let adjacent = adj[i].contains(v);
                        // symmetry
                        assert_eq!(adjacent, adj[j].contains(x));
                        // consistency with shared outputs
                        let share = x != v
                            && channel_outputs(&model, v).iter().any(|y| outs_x.contains(y));
                        assert_eq!(adjacent, share, "{x} ~ {v} under {model:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn preimage_is_inverse_of_outputs_exhaustive() {
        for model in [
            ChannelModel::deletions(1, 2),
            ChannelModel::edits(1, 2, EditRepertoire::InsDelSub),
            ChannelModel::burst_deletion(2, 2),
            ChannelModel::substring_edits(1, 2, 2),
        ] {
            let n = 4usize;
            let vertices = all_strings(n, 2);
            let mut outputs: Vec<HashSet<QaryString>> = Vec::new();
            for x in &vertices {
                outputs.push(channel_outputs(&model, x));
            }
            let mut all_ys: HashSet<QaryString> = HashSet::new();
            for o in &outputs {
                all_ys.extend(o.iter().cloned());
            }
            for y in &all_ys {
                let pre = channel_preimage(&model, y, n);
                for (i, x) in vertices.iter().enumerate() {
                    assert_eq!(pre.contains(x), outputs[i].contains(y), "y={y} x={x}");
                }
            }
        }
    }

    #[test]
    fn edits_adjacency_is_distance_2k() {
        // (n, k) pairs kept within the oracle's exhaustive budget
        for (n, k) in [(4usize, 1usize), (5, 1), (6, 1), (4, 2)] {
            for rep in [EditRepertoire::InsDel, EditRepertoire::InsDelSub] {
                let view = GraphView::new(n, ChannelModel::edits(k, 2, rep));
                let vertices = all_strings(n, 2);
                for x in &vertices {
                    let nbrs = view.neighbors(x);
                    for v in &vertices {
                        if v == x {
                            continue;
                        }
                        assert_eq!(
                            nbrs.contains(v),
                            edit_distance(x, v, rep) <= 2 * k,
                            "k={k} {x} {v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn neighbor_symmetry_n8() {
        let view = GraphView::new(8, ChannelModel::edits(1, 2, EditRepertoire::InsDelSub));
        let vertices = all_strings(8, 2);
        let adjacency: Vec<HashSet<QaryString>> = vertices
            .iter()
            .map(|x| view.neighbors(x).into_iter().collect())
            .collect();
        for (i, x) in vertices.iter().enumerate() {
            for v in &adjacency[i] {
                let j = v.base_q_value() as usize;
                assert!(adjacency[j].contains(x), "{x} ~ {v} not symmetric");
            }
        }
    }

    #[test]
    fn degree_bounds_hold_exhaustively() {
        let cases: Vec<(usize, ChannelModel)> = vec![
            (3, ChannelModel::edits(1, 2, EditRepertoire::InsDelSub)),
            (5, ChannelModel::edits(1, 2, EditRepertoire::InsDelSub)),
            (6, ChannelModel::edits(1, 2, EditRepertoire::InsDel)),
            (5, ChannelModel::edits(2, 2, EditRepertoire::InsDelSub)),
            (5, ChannelModel::edits(1, 3, EditRepertoire::InsDelSub)),
            (3, ChannelModel::burst_deletion(1, 2)),
            (6, ChannelModel::burst_deletion(3, 2)),
            (5, ChannelModel::deletions(1, 2)),
            (5, ChannelModel::substring_edits(1, 2, 2)),
        ];
        for (n, model) in cases {
            let view = GraphView::new(n, model);
            let bound = view.degree_bound();
            let mut max_deg = 0u64;
            for x in all_strings(n, model.q) {
                max_deg = max_deg.max(view.neighbors(&x).len() as u64);
            }
            assert!(bound >= max_deg, "{model:?} n={n}: bound {bound} < measured {max_deg}");
        }
        // the spec's worked example
        let view = GraphView::new(3, ChannelModel::edits(1, 2, EditRepertoire::InsDelSub));
        assert_eq!(view.degree_bound(), 360);
        let burst = GraphView::new(3, ChannelModel::burst_deletion(1, 2));
        assert_eq!(burst.degree_bound(), 40);
    }

    #[test]
    fn deletion_degree_bound_covers_figure_graph() {
        let view = GraphView::new(3, ChannelModel::deletions(1, 2));
        let mut max_deg = 0usize;
        for x in all_strings(3, 2) {
            max_deg = max_deg.max(view.neighbors(&x).len());
        }
        assert_eq!(max_deg, 6);
        assert!(view.degree_bound() >= max_deg as u64);
    }

    #[test]
    fn hypergraph_edges_match_figure() {
        let hv = HypergraphView::new(3, ChannelModel::deletions(1, 2));
        assert_eq!(hv.edges_containing(&s("000")), vec![s("00")]);
        assert_eq!(
            hv.edge_vertices(&s("00")).unwrap(),
            vec![s("000"), s("001"), s("010"), s("100")]
        );
        assert_eq!(
            hv.edge_vertices(&s("01")).unwrap(),
            vec![s("001"), s("010"), s("011"), s("101")]
        );
        assert!(hv.edge_vertices(&s("0000")).is_err());
    }

    #[test]
    fn hypergraph_bounds_hold_small() {
        for model in [
            ChannelModel::deletions(1, 2),
            ChannelModel::edits(1, 2, EditRepertoire::InsDelSub),
        ] {
            for n in 3..=6usize {
                let hv = HypergraphView::new(n, model);
                let r_bound = hv.degree_bound();
                let v_bound = hv.edge_size_bound();
                for x in all_strings(n, 2) {
                    let edges = hv.edges_containing(&x);
                    assert!((edges.len() as u64) <= r_bound);
                    for y in edges {
                        assert!((hv.edge_vertices(&y).unwrap().len() as u64) <= v_bound);
                    }
                }
            }
        }
    }

    #[test]
    fn isolated_vertex_has_no_neighbors() {
        // a 0-edit channel confuses nothing
        let view = GraphView::new(3, ChannelModel::edits(0, 2, EditRepertoire::InsDelSub));
        assert!(view.neighbors(&s("010")).is_empty());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let x = s3("2101");
        assert_eq!(x.to_string(), "2101");
        let wide = QaryString::new(vec![0, 12, 3], 16).unwrap();
        assert_eq!(wide.to_string(), "0,12,3");
        assert_eq!(QaryString::parse("0,12,3", 16).unwrap(), wide);
        assert!(QaryString::parse("019", 2).is_err());
    }

    #[test]
    fn base_q_value_round_trip() {
        assert_eq!(s("010").base_q_value(), 2);
        assert_eq!(s3("21").base_q_value(), 7);
        for v in 0..81 {
            assert_eq!(QaryString::from_base_q_value(v, 4, 3).base_q_value(), v);
        }
    }

    #[test]
    fn edit_scripts_apply() {
        let ops = parse_edit_script("d5;i3:1;s7:0").unwrap();
        assert_eq!(ops.len(), 3);
        let x = s("00000000");
        let y = apply_edit_script(&x, &ops).unwrap();
        // delete pos 5 -> 0000000; insert 1 at pos 3 -> 00100000; sub pos 7 -> 00100000
        assert_eq!(y, s("00100000"));
        assert!(apply_edit_script(&s("0"), &parse_edit_script("d4").unwrap()).is_err());
    }
}
