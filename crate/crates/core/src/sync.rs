//! Incremental synchronization.
//!
//! Alice holds x, Bob holds y, and only the distribution of their edit
//! distance is known. Alice first sends a mid-level syndrome; if Bob cannot
//! settle the string from it, Alice follows up. The follow-up does not need
//! a full higher-level syndrome: conditioned on the first syndrome's value,
//! the candidate strings form a code with high minimum distance, the
//! confusion graph restricted to that code has a much smaller maximum
//! degree, and a two-round coloring of the restricted graph is enough to
//! finish. That conditional syndrome is strictly shorter than the full one.

use std::rc::Rc;

use serde::Serialize;

use crate::channel::{
    all_strings, ball, ball_bound, channel_preimage, edit_distance, ChannelModel, EditRepertoire,
    QaryString,
};
use crate::coloring::{ColorGraph, Colorer, ColoringSpec, Syndrome};
use crate::codes::{CodeParams, KEditCode};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// The confusion graph for <= target_level edits, restricted to the strings
/// sharing one anchor syndrome value. Vertices are the code
/// C = {z : anchor_syndrome(z) = anchor_value}; adjacency is edit distance
/// <= 2*target_level; C has pairwise distance >= 2*anchor_level + 1, which
/// caps the degree at ball_bound(n, 2*target - anchor, q).
#[derive(Clone)]
pub struct RestrictedGraph {
    pub n: usize,
    pub q: u32,
    pub anchor_level: usize,
    pub target_level: usize,
    pub repertoire: EditRepertoire,
    pub anchor_value: u64,
    anchor_code: Rc<KEditCode>,
}

impl RestrictedGraph {
    /// Internal constructor; permits anchor_level == target_level (the
    /// restricted graph is then edgeless but still well defined, which the
    /// protocol needs when ceil((a+b)/2) == b).
    pub fn new(anchor_code: Rc<KEditCode>, target_level: usize, anchor_value: u64) -> Result<Self> {
        let p = *anchor_code.params();
        if p.substring_len.is_some() {
            return Err(Error::ParameterEnvelope(
                "restricted graphs anchor on k-edit syndromes".into(),
            ));
        }
        if target_level < p.k {
            return Err(Error::InvalidInput(format!(
                "target level {} below anchor level {}",
                target_level, p.k
            )));
        }
        Ok(RestrictedGraph {
            n: p.n,
            q: p.q,
            anchor_level: p.k,
            target_level,
            repertoire: p.repertoire,
            anchor_value,
            anchor_code,
        })
    }

    /// Whether z belongs to the restricted vertex set.
    pub fn admits(&self, z: &QaryString) -> Result<bool> {
        Ok(self.anchor_code.syndrome(z)?.value == self.anchor_value)
    }
}

impl ColorGraph for RestrictedGraph {
    fn n(&self) -> usize {
        self.n
    }

    fn q(&self) -> u32 {
        self.q
    }

    fn degree_bound(&self) -> u64 {
        ball_bound(self.n, 2 * self.target_level - self.anchor_level, self.q)
    }

    fn neighbors(&self, x: &QaryString) -> Vec<QaryString> {
        let radius = 2 * self.target_level;
        // enumerate B_radius(x) within the length-n cube; below 2^20
        // vertices a direct scan beats ball expansion
        let cube = (self.q as u64).checked_pow(self.n as u32);
        let mut out: Vec<QaryString> = match cube {
            Some(total) if total <= 1 << 20 => all_strings(self.n, self.q)
                .into_iter()
                .filter(|z| z != x && edit_distance(x, z, self.repertoire) <= radius)
                .collect(),
            _ => ball(x, radius, self.repertoire)
                .into_iter()
                .filter(|z| z.len() == self.n && z != x)
                .collect(),
        };
        out.retain(|z| self.admits(z).unwrap_or(false));
        out.sort();
        out
    }
}

/// Conditional syndrome encoder: two-round coloring over restricted graphs
/// anchored at one syndrome level, with per-anchor-value colorer caches.
pub struct IncrementalCode {
    anchor_code: Rc<KEditCode>,
    target_level: usize,
    spec: ColoringSpec,
    colorers: std::cell::RefCell<std::collections::HashMap<u64, Rc<Colorer<RestrictedGraph>>>>,
}

impl IncrementalCode {
    /// Internal constructor; see `new_checked` for the public precondition.
    pub fn new(anchor_code: Rc<KEditCode>, target_level: usize) -> Result<Self> {
        let p = *anchor_code.params();
        if target_level < p.k {
            return Err(Error::InvalidInput(format!(
                "target level {} below anchor level {}",
                target_level, p.k
            )));
        }
        // spec depends only on the class (n, q, levels), never on the anchor
        // value, so one spec serves every fiber
        let probe = RestrictedGraph::new(Rc::clone(&anchor_code), target_level, 0)?;
        let spec = ColoringSpec::for_graph(&probe)?;
        Ok(IncrementalCode {
            anchor_code,
            target_level,
            spec,
            colorers: Default::default(),
        })
    }

    /// Public construction of the conditional syndrome for `target > anchor`;
    /// equal levels are a degenerate request and are rejected.
    pub fn new_checked(anchor_code: Rc<KEditCode>, target_level: usize) -> Result<Self> {
        if target_level <= anchor_code.params().k {
            return Err(Error::InvalidInput(format!(
                "conditional syndrome needs target level > anchor level {}",
                anchor_code.params().k
            )));
        }
        IncrementalCode::new(anchor_code, target_level)
    }

    pub fn spec(&self) -> &ColoringSpec {
        &self.spec
    }

    pub fn syndrome_bits(&self) -> u32 {
        self.spec.bits()
    }

    fn colorer_for(&self, anchor_value: u64) -> Result<Rc<Colorer<RestrictedGraph>>> {
        if let Some(c) = self.colorers.borrow().get(&anchor_value) {
            return Ok(Rc::clone(c));
        }
        let graph =
            RestrictedGraph::new(Rc::clone(&self.anchor_code), self.target_level, anchor_value)?;
        let colorer = Rc::new(Colorer::with_spec(graph, self.spec.clone()));
        self.colorers
            .borrow_mut()
            .insert(anchor_value, Rc::clone(&colorer));
        Ok(colorer)
    }

    /// The conditional syndrome of x within the fiber of its own anchor
    /// syndrome.
    pub fn syndrome(&self, x: &QaryString) -> Result<Syndrome> {
        let anchor = self.anchor_code.syndrome(x)?.value;
        self.colorer_for(anchor)?.syndrome(x)
    }

    /// Whether z (which must lie in the fiber of `anchor_value`) carries the
    /// given conditional syndrome value.
    pub fn matches(&self, z: &QaryString, anchor_value: u64, value: u64) -> Result<bool> {
        let colorer = self.colorer_for(anchor_value)?;
        if !colorer.graph().admits(z)? {
            return Ok(false);
        }
        if !colorer.could_have_color(z, value)? {
            return Ok(false);
        }
        Ok(colorer.color_value(z)? == value)
    }
}

/// Checks the ball-intersection inequality on a concrete code: with d the
/// minimum pairwise edit distance of C, `|B_D(c) ∩ C|` is at most
/// `|B_{D - floor((d-1)/2)}(c)|`. Used by tests; must always return true.
pub fn verify_ball_intersection(
    code: &[QaryString],
    center: &QaryString,
    radius: usize,
    repertoire: EditRepertoire,
) -> Result<bool> {
    if code.len() < 2 {
        return Err(Error::InvalidInput("code needs at least two words".into()));
    }
    let mut min_dist = usize::MAX;
    for (i, u) in code.iter().enumerate() {
        for v in code.iter().skip(i + 1) {
            min_dist = min_dist.min(edit_distance(u, v, repertoire));
        }
    }
    let half = (min_dist - 1) / 2;
    if radius < half {
        return Err(Error::InvalidInput(format!(
            "radius {radius} below floor((d-1)/2) = {half}"
        )));
    }
    let lhs = code
        .iter()
        .filter(|c| edit_distance(center, c, repertoire) <= radius)
        .count();
    let rhs = ball(center, radius - half, repertoire).len();
    Ok(lhs <= rhs)
}

// --- Protocols ---

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolMode {
    Naive,
    Fallback,
    Incremental,
}

impl ProtocolMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolMode::Naive => "naive",
            ProtocolMode::Fallback => "fallback",
            ProtocolMode::Incremental => "incremental",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sender {
    Alice,
    Bob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MessageKind {
    /// The first-stage syndrome at level ceil((a+b)/2).
    SyndromeHalf,
    /// A full syndrome at level b.
    SyndromeFull,
    /// The conditional syndrome at level b given the first stage.
    SyndromeIncremental,
    Ack,
    Nack,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProtocolMessage {
    pub sender: Sender,
    pub kind: MessageKind,
    pub bits: u64,
}

/// Ordered record of one protocol run.
#[derive(Debug, Clone, Serialize)]
pub struct SyncTranscript {
    pub mode: ProtocolMode,
    pub messages: Vec<ProtocolMessage>,
    pub outcome: String,
    /// Total bits sent by Alice (Bob's 1-bit ack/nack excluded by
    /// convention).
    pub alice_bits: u64,
}

/// A reusable protocol runner for fixed (n, q, a, b): builds the three
/// syndrome codes once and replays them across trials.
pub struct SyncSession {
    pub n: usize,
    pub q: u32,
    pub a: usize,
    pub b: usize,
    pub repertoire: EditRepertoire,
    mid_level: usize,
    code_mid: Rc<KEditCode>,
    code_full: KEditCode,
    incremental: IncrementalCode,
    candidate_cache: std::cell::RefCell<CandidateCache>,
}

/// Memoized Bob-side candidate sets, keyed by (received word, edit level).
type CandidateCache = std::collections::HashMap<(QaryString, usize), Rc<Vec<QaryString>>>;

impl SyncSession {
    pub fn new(n: usize, q: u32, a: usize, b: usize) -> Result<Self> {
        if a < 1 || b <= a {
            return Err(Error::InvalidInput(format!("need 1 <= a < b, got a={a} b={b}")));
        }
        let repertoire = EditRepertoire::InsDelSub;
        let mid_level = (a + b).div_ceil(2);
        let code_mid = Rc::new(KEditCode::new(CodeParams::edits(n, q, mid_level, repertoire))?);
        let code_full = KEditCode::new(CodeParams::edits(n, q, b, repertoire))?;
        let incremental = IncrementalCode::new(Rc::clone(&code_mid), b)?;
        Ok(SyncSession {
            n,
            q,
            a,
            b,
            repertoire,
            mid_level,
            code_mid,
            code_full,
            incremental,
            candidate_cache: Default::default(),
        })
    }

    pub fn mid_level(&self) -> usize {
        self.mid_level
    }

    pub fn mid_bits(&self) -> u32 {
        self.code_mid.syndrome_bits()
    }

    pub fn full_bits(&self) -> u32 {
        self.code_full.syndrome_bits()
    }

    pub fn incremental_bits(&self) -> u32 {
        self.incremental.syndrome_bits()
    }

    /// Bob's candidate set: the length-n strings within `level` edits of y,
    /// in lexicographic search order. Memoized per (y, level).
    fn candidates(&self, y: &QaryString, level: usize) -> Rc<Vec<QaryString>> {
        let key = (y.clone(), level);
        if let Some(c) = self.candidate_cache.borrow().get(&key) {
            return Rc::clone(c);
        }
        let model = ChannelModel::edits(level, self.q, self.repertoire);
        let mut out: Vec<QaryString> = channel_preimage(&model, y, self.n).into_iter().collect();
        out.sort();
        let out = Rc::new(out);
        self.candidate_cache.borrow_mut().insert(key, Rc::clone(&out));
        out
    }

    /// Runs one protocol. Requires d_E(x, y) <= b.
    pub fn run(&self, x: &QaryString, y: &QaryString, mode: ProtocolMode) -> Result<SyncTranscript> {
        if edit_distance(x, y, self.repertoire) > self.b {
            return Err(Error::InvalidInput(format!(
                "precondition d_E(x,y) <= {} violated",
                self.b
            )));
        }
        let mut messages = Vec::new();
        let outcome = match mode {
            ProtocolMode::Naive => {
                let sigma = self.code_full.syndrome(x)?;
                messages.push(ProtocolMessage {
                    sender: Sender::Alice,
                    kind: MessageKind::SyndromeFull,
                    bits: sigma.bits as u64,
                });
                self.search_unique(y, self.b, |z| {
                    Ok(self.code_full.syndrome(z)?.value == sigma.value)
                })?
            }
            ProtocolMode::Fallback | ProtocolMode::Incremental => {
                let sigma_mid = self.code_mid.syndrome(x)?;
                messages.push(ProtocolMessage {
                    sender: Sender::Alice,
                    kind: MessageKind::SyndromeHalf,
                    bits: sigma_mid.bits as u64,
                });
                let near = self
                    .candidates(y, self.a)
                    .iter()
                    .find_map(|z| match self.code_mid.syndrome(z) {
                        Ok(s) if s.value == sigma_mid.value => Some(Ok(z.clone())),
                        Ok(_) => None,
                        Err(e) => Some(Err(e)),
                    })
                    .transpose()?;
                if let Some(z) = near {
                    messages.push(ProtocolMessage {
                        sender: Sender::Bob,
                        kind: MessageKind::Ack,
                        bits: 1,
                    });
                    z
                } else {
                    messages.push(ProtocolMessage {
                        sender: Sender::Bob,
                        kind: MessageKind::Nack,
                        bits: 1,
                    });
                    if mode == ProtocolMode::Fallback {
                        let sigma_full = self.code_full.syndrome(x)?;
                        messages.push(ProtocolMessage {
                            sender: Sender::Alice,
                            kind: MessageKind::SyndromeFull,
                            bits: sigma_full.bits as u64,
                        });
                        self.search_unique(y, self.b, |z| {
                            Ok(self.code_full.syndrome(z)?.value == sigma_full.value)
                        })?
                    } else {
                        let sigma_inc = self.incremental.syndrome(x)?;
                        messages.push(ProtocolMessage {
                            sender: Sender::Alice,
                            kind: MessageKind::SyndromeIncremental,
                            bits: sigma_inc.bits as u64,
                        });
                        self.search_unique(y, self.b, |z| {
                            if self.code_mid.syndrome(z)?.value != sigma_mid.value {
                                return Ok(false);
                            }
                            self.incremental.matches(z, sigma_mid.value, sigma_inc.value)
                        })?
                    }
                }
            }
        };
        let alice_bits = messages
            .iter()
            .filter(|m| m.sender == Sender::Alice)
            .map(|m| m.bits)
            .sum();
        Ok(SyncTranscript {
            mode,
            messages,
            outcome: outcome.to_string(),
            alice_bits,
        })
    }

    fn search_unique(
        &self,
        y: &QaryString,
        level: usize,
        mut matches: impl FnMut(&QaryString) -> Result<bool>,
    ) -> Result<QaryString> {
        let mut hit: Option<QaryString> = None;
        for z in self.candidates(y, level).iter() {
            if matches(z)? {
                if let Some(prev) = &hit {
                    return Err(Error::InvariantViolation(format!(
                        "protocol search found two matches {prev} and {z}"
                    )));
                }
                hit = Some(z.clone());
            }
        }
        hit.ok_or_else(|| {
            Error::InvariantViolation("protocol search found no match within the radius".into())
        })
    }
}

/// Leading-order expected Alice-to-Bob cost (coefficients of log n), per
/// protocol, when d_E(x,y) = a with probability 1-p and = b with
/// probability p. The oracle bound assumes a genie reveals the distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostModel {
    pub naive: f64,
    pub fallback: f64,
    pub incremental: f64,
    pub oracle: f64,
}

pub fn expected_cost(a: usize, b: usize, p: f64) -> Result<CostModel> {
    if a < 1 || b <= a {
        return Err(Error::InvalidInput(format!("need 1 <= a < b, got a={a} b={b}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("probability {p} outside [0,1]")));
    }
    let m = (a + b).div_ceil(2) as f64;
    let (a, b) = (a as f64, b as f64);
    Ok(CostModel {
        naive: 4.0 * b,
        fallback: 4.0 * m + p * 4.0 * b,
        incremental: 4.0 * m + p * (4.0 * b - 2.0 * m),
        oracle: 4.0 * (a + p * (b - a)),
    })
}

/// Crossing probabilities against the naive protocol: fallback beats naive
/// for p < p0, incremental for p < p1, with p0 <= p1.
pub fn cost_crossings(a: usize, b: usize) -> Result<(f64, f64)> {
    if a < 1 || b <= a {
        return Err(Error::InvalidInput(format!("need 1 <= a < b, got a={a} b={b}")));
    }
    let m = (a + b).div_ceil(2) as f64;
    let b = b as f64;
    let p0 = (b - m) / b;
    let p1 = (4.0 * b - 4.0 * m) / (4.0 * b - 2.0 * m);
    Ok((p0, p1))
}

// --- Simulation ---

#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    pub n: usize,
    pub q: u32,
    pub a: usize,
    pub b: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeSummary {
    pub mode: ProtocolMode,
    pub mean_bits: f64,
    pub recovered: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimSummary {
    pub trials: usize,
    pub p: f64,
    pub modes: Vec<ModeSummary>,
    /// Leading-order reference curves at these parameters.
    pub formula: CostModel,
    /// A representative transcript per mode from the final trial.
    pub sample_transcripts: Vec<SyncTranscript>,
}

/// Draws (x, y) at edit distance exactly a (probability 1-p) or b
/// (probability p) and runs all three protocols on each pair.
pub fn simulate(cfg: &SimConfig) -> Result<SimSummary> {
    if cfg.trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let session = SyncSession::new(cfg.n, cfg.q, cfg.a, cfg.b)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let modes = [ProtocolMode::Naive, ProtocolMode::Fallback, ProtocolMode::Incremental];
    let mut bit_totals = [0u64; 3];
    let mut recovered = [0usize; 3];
    let mut samples: Vec<SyncTranscript> = Vec::new();
    for trial in 0..cfg.trials {
        let x = random_string(&mut rng, cfg.n, cfg.q);
        let d = if rng.coin(cfg.p) { cfg.b } else { cfg.a };
        let y = random_at_distance(&mut rng, &x, d, session.repertoire);
        if trial + 1 == cfg.trials {
            samples.clear();
        }
        for (slot, mode) in modes.iter().enumerate() {
            let transcript = session.run(&x, &y, *mode)?;
            bit_totals[slot] += transcript.alice_bits;
            if transcript.outcome == x.to_string() {
                recovered[slot] += 1;
            }
            if trial + 1 == cfg.trials {
                samples.push(transcript);
            }
        }
    }
    Ok(SimSummary {
        trials: cfg.trials,
        p: cfg.p,
        modes: modes
            .iter()
            .enumerate()
            .map(|(slot, mode)| ModeSummary {
                mode: *mode,
                mean_bits: bit_totals[slot] as f64 / cfg.trials as f64,
                recovered: recovered[slot],
            })
            .collect(),
        formula: expected_cost(cfg.a, cfg.b, cfg.p)?,
        sample_transcripts: samples,
    })
}

/// CSV rows (p, mode, mean_bits) plus the oracle reference, matching the
/// aggregate output format.
pub fn summary_csv(summary: &SimSummary) -> String {
    let mut out = String::from("p,mode,mean_bits\n");
    for m in &summary.modes {
        out.push_str(&format!("{},{},{}\n", summary.p, m.mode.as_str(), m.mean_bits));
    }
    out.push_str(&format!("{},oracle_lb_coeff_logn,{}\n", summary.p, summary.formula.oracle));
    out
}

pub fn random_string(rng: &mut SplitMix64, n: usize, q: u32) -> QaryString {
    let symbols: Vec<u32> = (0..n).map(|_| rng.below(q as u64) as u32).collect();
    QaryString::new(symbols, q).expect("symbols drawn below q")
}

/// A string at edit distance exactly `d` from x (random edits, resampled
/// until the distance lands).
pub fn random_at_distance(
    rng: &mut SplitMix64,
    x: &QaryString,
    d: usize,
    repertoire: EditRepertoire,
) -> QaryString {
    if d == 0 {
        return x.clone();
    }
    loop {
        let mut cur = x.clone();
        for _ in 0..d {
            cur = random_single_edit(rng, &cur, repertoire);
        }
        if edit_distance(x, &cur, repertoire) == d {
            return cur;
        }
    }
}

fn random_single_edit(rng: &mut SplitMix64, x: &QaryString, repertoire: EditRepertoire) -> QaryString {
    let q = x.q();
    loop {
        let op = match repertoire {
            EditRepertoire::InsDel => rng.below(2),
            EditRepertoire::InsDelSub => rng.below(3),
        };
        match op {
            0 if !x.is_empty() => {
                let pos = rng.below(x.len() as u64) as usize;
                return x.delete_run(pos, 1);
            }
            1 => {
                let pos = rng.below(x.len() as u64 + 1) as usize;
                let sym = rng.below(q as u64) as u32;
                return x.splice(pos, 0, &[sym]);
            }
            2 if !x.is_empty() => {
                let pos = rng.below(x.len() as u64) as usize;
                let old = x.symbols()[pos];
                let sym = (old + 1 + rng.below(q as u64 - 1) as u32) % q;
                return x.splice(pos, 1, &[sym]);
            }
            _ => continue,
        }
    }
}

/// Greedily builds a code of minimum edit distance `d` over all length-n
/// strings, scanning lexicographically. Test helper for the ball-intersection bound.
pub fn greedy_distance_code(n: usize, q: u32, d: usize, repertoire: EditRepertoire) -> Vec<QaryString> {
    let mut code: Vec<QaryString> = Vec::new();
    for x in all_strings(n, q) {
        if code.iter().all(|c| edit_distance(c, &x, repertoire) >= d) {
            code.push(x);
        }
    }
    code
}
