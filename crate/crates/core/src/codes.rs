//! End-user encoders and decoders.
//!
//! A codeword is the pair (x, syndrome). The decoder enumerates every input
//! that could have produced the received word and keeps the one whose
//! syndrome matches; properness of the underlying coloring guarantees the
//! match is unique. `ProtectedCode` additionally shields the syndrome
//! itself, so the whole codeword can travel through the channel.

use serde::{Deserialize, Serialize};

use crate::channel::{
    channel_preimage, ChannelModel, EditRepertoire, GraphView, HypergraphView, QaryString,
};
use crate::coloring::{Colorer, ColoringSpec, Labeler, LabelingSpec, Syndrome};
use crate::error::{Error, Result};

/// Parameters of a k-edit (or k-substring-edit) code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub q: u32,
    pub k: usize,
    pub repertoire: EditRepertoire,
    /// `Some(l)` switches the channel to k substring edits of length <= l;
    /// kept small so preimage enumeration stays desk-scale.
    pub substring_len: Option<usize>,
}

impl CodeParams {
    pub fn edits(n: usize, q: u32, k: usize, repertoire: EditRepertoire) -> Self {
        CodeParams { n, q, k, repertoire, substring_len: None }
    }

    pub fn substring(n: usize, q: u32, k: usize, l: usize) -> Self {
        CodeParams {
            n,
            q,
            k,
            repertoire: EditRepertoire::InsDel,
            substring_len: Some(l),
        }
    }

    pub fn model(&self) -> ChannelModel {
        match self.substring_len {
            None => ChannelModel::edits(self.k, self.q, self.repertoire),
            Some(l) => ChannelModel::substring_edits(self.k, l, self.q),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::ParameterEnvelope("block length n must be >= 1".into()));
        }
        if self.q < 2 {
            return Err(Error::ParameterEnvelope("alphabet q must be >= 2".into()));
        }
        if self.k > 6 {
            return Err(Error::ParameterEnvelope(format!(
                "k = {} exceeds the supported envelope (k <= 6)",
                self.k
            )));
        }
        if let Some(l) = self.substring_len {
            if l == 0 || l > 8 {
                return Err(Error::ParameterEnvelope(format!(
                    "substring length l = {l} outside 1..=8"
                )));
            }
            if (self.q as u64).pow(l as u32) > 4096 {
                return Err(Error::ParameterEnvelope(
                    "q^l too large for substring-edit enumeration".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Outcome of a decode, including how much work the search did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub result: QaryString,
    pub candidates_examined: usize,
}

/// Uniquely decodable code for k edits (or k short substring edits).
pub struct KEditCode {
    params: CodeParams,
    /// None for the degenerate k = 0 code, whose syndrome is empty.
    colorer: Option<Colorer<GraphView>>,
}

impl KEditCode {
    pub fn new(params: CodeParams) -> Result<Self> {
        params.validate()?;
        let colorer = if params.k == 0 {
            None
        } else {
            Some(Colorer::new(GraphView::new(params.n, params.model()))?)
        };
        Ok(KEditCode { params, colorer })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn spec(&self) -> Option<&ColoringSpec> {
        self.colorer.as_ref().map(|c| c.spec())
    }

    pub fn syndrome_range(&self) -> u64 {
        self.spec().map_or(1, |s| s.range())
    }

    pub fn syndrome_bits(&self) -> u32 {
        self.spec().map_or(0, |s| s.bits())
    }

    pub fn syndrome(&self, x: &QaryString) -> Result<Syndrome> {
        if x.len() != self.params.n || x.q() != self.params.q {
            return Err(Error::InvalidInput(format!(
                "input must be a length-{} string over {} symbols",
                self.params.n, self.params.q
            )));
        }
        match &self.colorer {
            None => Ok(Syndrome::scalar(0, 1)),
            Some(colorer) => colorer.syndrome(x),
        }
    }

    pub fn decode(&self, y: &QaryString, sigma: &Syndrome) -> Result<QaryString> {
        Ok(self.decode_report(y, sigma)?.result)
    }

    /// Enumerates the preimage of y at length n and returns the unique
    /// candidate whose color matches. A cheap set-membership test filters
    /// candidates before any full color is computed.
    pub fn decode_report(&self, y: &QaryString, sigma: &Syndrome) -> Result<DecodeReport> {
        let colorer = match &self.colorer {
            None => {
                // 0 errors: y must be the codeword itself
                if y.len() != self.params.n {
                    return Err(Error::Undecodable(format!(
                        "length {} received on a 0-error channel of length {}",
                        y.len(),
                        self.params.n
                    )));
                }
                return Ok(DecodeReport { result: y.clone(), candidates_examined: 1 });
            }
            Some(c) => c,
        };
        if sigma.range != colorer.spec().range() {
            return Err(Error::InvalidInput(format!(
                "syndrome range {} does not match code range {}",
                sigma.range,
                colorer.spec().range()
            )));
        }
        let mut candidates: Vec<QaryString> =
            channel_preimage(&self.params.model(), y, self.params.n)
                .into_iter()
                .collect();
        candidates.sort();
        if candidates.is_empty() {
            return Err(Error::Undecodable(format!(
                "{y} is not reachable from any length-{} input",
                self.params.n
            )));
        }
        let examined = candidates.len();
        let mut matches = Vec::new();
        for z in candidates {
            if !colorer.could_have_color(&z, sigma.value)? {
                continue;
            }
            if colorer.color_value(&z)? == sigma.value {
                matches.push(z);
            }
        }
        match matches.len() {
            0 => Err(Error::Undecodable(
                "no candidate in the preimage matches the syndrome".into(),
            )),
            1 => Ok(DecodeReport {
                result: matches.pop().expect("len checked"),
                candidates_examined: examined,
            }),
            _ => Err(Error::InvariantViolation(format!(
                "{} candidates share the syndrome; the coloring must separate them",
                matches.len()
            ))),
        }
    }
}

// --- List decoding ---

/// Parameters of a list-decodable code: list size and the seed of the
/// randomized family behind the labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListParams {
    pub n: usize,
    pub q: u32,
    pub k: usize,
    pub repertoire: EditRepertoire,
    pub list_size: u64,
    pub seed: u64,
}

/// How many consecutive seeds an encoder tries before giving up on the
/// random family.
const MAX_SEED_RETRIES: u64 = 32;

/// List-decodable code for k edits with constant list size.
pub struct ListCode {
    params: ListParams,
    labeler: Labeler,
}

impl ListCode {
    pub fn new(params: ListParams) -> Result<Self> {
        if params.list_size == 0 {
            return Err(Error::ParameterEnvelope("list size must be >= 1".into()));
        }
        CodeParams::edits(params.n, params.q, params.k, params.repertoire).validate()?;
        let view = HypergraphView::new(
            params.n,
            ChannelModel::edits(params.k, params.q, params.repertoire),
        );
        let labeler = Labeler::new(view, params.list_size, params.seed)?;
        Ok(ListCode { params, labeler })
    }

    pub fn params(&self) -> &ListParams {
        &self.params
    }

    pub fn spec(&self) -> &LabelingSpec {
        self.labeler.spec()
    }

    pub fn syndrome_bits(&self) -> u32 {
        Syndrome::scalar(0, self.spec().range()).bits
    }

    /// Labels x, retrying with consecutive seeds on family failure. Returns
    /// the label and the seed that produced it; the seed travels in the
    /// syndrome header so the decoder reconstructs the same family.
    pub fn syndrome(&self, x: &QaryString) -> Result<(Syndrome, u64)> {
        if x.len() != self.params.n || x.q() != self.params.q {
            return Err(Error::InvalidInput(format!(
                "input must be a length-{} string over {} symbols",
                self.params.n, self.params.q
            )));
        }
        match self.labeler.label(x) {
            Ok(sigma) => return Ok((sigma, self.params.seed)),
            Err(Error::FamilyFailure(_)) => {}
            Err(other) => return Err(other),
        }
        for attempt in 1..MAX_SEED_RETRIES {
            let seed = self.params.seed + attempt;
            let retry = ListCode::new(ListParams { seed, ..self.params })?;
            match retry.labeler.label(x) {
                Ok(sigma) => return Ok((sigma, seed)),
                Err(Error::FamilyFailure(_)) => continue,
                Err(other) => return Err(other),
            }
        }
        Err(Error::FamilyFailure(format!(
            "no witness after {MAX_SEED_RETRIES} seeds from {}",
            self.params.seed
        )))
    }

    /// Decodes a received word: the list of at most `list_size` candidates
    /// in the edge defined by y, always containing the true input. `seed`
    /// is the value recorded alongside the syndrome.
    pub fn decode(&self, y: &QaryString, sigma: &Syndrome, seed: u64) -> Result<Vec<QaryString>> {
        if seed == self.params.seed {
            return self.labeler.decode(sigma, y);
        }
        let other = ListCode::new(ListParams { seed, ..self.params })?;
        other.labeler.decode(sigma, y)
    }
}

/// Ground size of the unique-decoding syndrome space (Q2^2) at the given
/// parameters, for the list-vs-unique comparison. Formula-level: works past
/// the block lengths the colorer itself supports.
pub fn unique_ground_size(n: usize, q: u32, k: usize, repertoire: EditRepertoire) -> Result<u64> {
    let view = GraphView::new(n, ChannelModel::edits(k, q, repertoire));
    let spec = ColoringSpec::from_sizes(
        crate::coloring::ceil_log2_pow(q, n),
        view.degree_bound().max(1),
    )?;
    Ok(spec.range())
}

/// Ground size t of the list-mode label space at the given parameters.
pub fn list_ground_size(
    n: usize,
    q: u32,
    k: usize,
    repertoire: EditRepertoire,
    list_size: u64,
) -> Result<u64> {
    let view = HypergraphView::new(n, ChannelModel::edits(k, q, repertoire));
    let spec = LabelingSpec::from_sizes(
        crate::coloring::ceil_log2_pow(q, n),
        view.degree_bound().max(1),
        view.edge_size_bound().max(1),
        list_size,
        0,
    )?;
    Ok(spec.range())
}

/// Smallest n in `[4, n_max]` from which the list-mode ground stays strictly
/// below the unique-mode ground through n_max.
pub fn list_unique_crossover(
    q: u32,
    k: usize,
    repertoire: EditRepertoire,
    list_size: u64,
    n_max: usize,
) -> Result<Option<usize>> {
    let mut crossover = None;
    for n in 4..=n_max {
        let list = list_ground_size(n, q, k, repertoire, list_size)?;
        let unique = unique_ground_size(n, q, k, repertoire)?;
        if list < unique {
            crossover.get_or_insert(n);
        } else {
            crossover = None;
        }
    }
    Ok(crossover)
}

// --- Protected codewords ---

/// Self-contained codeword: the payload, the syndrome's q-ary digits, and a
/// repetition-protected inner syndrome of those digits, concatenated. The
/// whole thing survives k edits with nothing transmitted out of band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtectedCodeword {
    pub word: QaryString,
    pub payload_len: usize,
    pub syndrome_len: usize,
    pub repetition_len: usize,
}

/// Encoder/decoder for protected codewords.
pub struct ProtectedCode {
    params: CodeParams,
    /// Syndrome over the payload, on length-n strings.
    inner: KEditCode,
    /// Syndrome over the syndrome digits, on length-m strings. None when
    /// k = 0 (nothing to protect).
    outer: Option<KEditCode>,
    /// m: fixed digit length of inner syndrome values in base q.
    syndrome_digits: usize,
    /// r: fixed digit length of outer syndrome values in base q.
    rep_digits: usize,
}

impl ProtectedCode {
    pub fn new(params: CodeParams) -> Result<Self> {
        if params.substring_len.is_some() {
            return Err(Error::ParameterEnvelope(
                "protected codewords are built for the k-edit channel".into(),
            ));
        }
        params.validate()?;
        let inner = KEditCode::new(params)?;
        if params.k == 0 {
            return Ok(ProtectedCode {
                params,
                inner,
                outer: None,
                syndrome_digits: 0,
                rep_digits: 0,
            });
        }
        let syndrome_digits = digit_len(inner.syndrome_range() - 1, params.q);
        let outer = KEditCode::new(CodeParams::edits(
            syndrome_digits,
            params.q,
            params.k,
            params.repertoire,
        ))?;
        let rep_digits = digit_len(outer.syndrome_range() - 1, params.q);
        Ok(ProtectedCode {
            params,
            inner,
            outer: Some(outer),
            syndrome_digits,
            rep_digits,
        })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    /// (payload, syndrome digits, repetition digits) segment lengths.
    pub fn segment_lengths(&self) -> (usize, usize, usize) {
        (
            self.params.n,
            self.syndrome_digits,
            (2 * self.params.k + 1) * self.rep_digits,
        )
    }

    pub fn codeword_len(&self) -> usize {
        let (n, m, rep) = self.segment_lengths();
        n + m + rep
    }

    pub fn encode(&self, x: &QaryString) -> Result<ProtectedCodeword> {
        if x.len() != self.params.n || x.q() != self.params.q {
            return Err(Error::InvalidInput(format!(
                "payload must be a length-{} string over {} symbols",
                self.params.n, self.params.q
            )));
        }
        if self.params.k == 0 {
            return Ok(ProtectedCodeword {
                word: x.clone(),
                payload_len: self.params.n,
                syndrome_len: 0,
                repetition_len: 0,
            });
        }
        let outer = self.outer.as_ref().expect("k > 0");
        let sigma = self.inner.syndrome(x)?;
        let sigma_digits =
            QaryString::from_base_q_value(sigma.value, self.syndrome_digits, self.params.q);
        let phi1 = outer.syndrome(&sigma_digits)?;
        let phi1_digits =
            QaryString::from_base_q_value(phi1.value, self.rep_digits, self.params.q);
        let reps = 2 * self.params.k + 1;
        let mut symbols = Vec::with_capacity(self.codeword_len());
        symbols.extend_from_slice(x.symbols());
        symbols.extend_from_slice(sigma_digits.symbols());
        for &d in phi1_digits.symbols() {
            for _ in 0..reps {
                symbols.push(d);
            }
        }
        Ok(ProtectedCodeword {
            word: QaryString::new(symbols, self.params.q)?,
            payload_len: self.params.n,
            syndrome_len: self.syndrome_digits,
            repetition_len: reps * self.rep_digits,
        })
    }

    /// Recovers the payload from a codeword that suffered at most k edits.
    ///
    /// Slices y at the nominal offsets shifted by the net length change,
    /// decodes the repetition tail, then the syndrome digits, then the
    /// payload. Each slice is within k edits of its segment.
    pub fn decode(&self, y: &QaryString) -> Result<QaryString> {
        let k = self.params.k as isize;
        if self.params.k == 0 {
            if y.len() != self.params.n {
                return Err(Error::Undecodable("length mismatch on 0-error channel".into()));
            }
            return Ok(y.clone());
        }
        let outer = self.outer.as_ref().expect("k > 0");
        let (n, m, rep_len) = self.segment_lengths();
        let nominal = (n + m + rep_len) as isize;
        let delta = y.len() as isize - nominal;
        if delta.abs() > k {
            return Err(Error::Undecodable(format!(
                "received length {} is more than {k} away from codeword length {nominal}",
                y.len()
            )));
        }
        let payload_end = usize::try_from(n as isize + delta)
            .map_err(|_| Error::Undecodable("payload slice underflows".into()))?;
        let middle_end = usize::try_from((n + m) as isize + delta)
            .map_err(|_| Error::Undecodable("syndrome slice underflows".into()))?;
        let payload_slice = y.slice(0, payload_end);
        let middle_slice = y.slice(n, middle_end);
        let rep_slice = y.slice(n + m, y.len());

        let phi1_digits = decode_repetition(
            &rep_slice,
            self.rep_digits,
            2 * self.params.k + 1,
            self.params.k,
            self.params.repertoire,
        )?;
        let phi1 = Syndrome::pair_from_value(
            phi1_digits.base_q_value(),
            outer.syndrome_range(),
            outer.syndrome_bits(),
        );
        let sigma_digits = outer
            .decode(&middle_slice, &phi1)
            .map_err(keep_invariants_or_undecodable)?;
        let sigma = Syndrome::pair_from_value(
            sigma_digits.base_q_value(),
            self.inner.syndrome_range(),
            self.inner.syndrome_bits(),
        );
        self.inner
            .decode(&payload_slice, &sigma)
            .map_err(keep_invariants_or_undecodable)
    }
}

impl Syndrome {
    fn pair_from_value(value: u64, range: u64, bits: u32) -> Syndrome {
        Syndrome { value, range, bits }
    }
}

fn keep_invariants_or_undecodable(e: Error) -> Error {
    match e {
        Error::InvariantViolation(_) => e,
        other => Error::Undecodable(format!("stage failed: {other}")),
    }
}

/// Number of base-q digits needed for values up to `max_value`.
pub fn digit_len(max_value: u64, q: u32) -> usize {
    let mut len = 1;
    let mut cap = q as u64;
    while cap <= max_value {
        cap = cap.saturating_mul(q as u64);
        len += 1;
    }
    len
}

/// Decodes a symbol-wise repetition code from at most `budget` edits: finds
/// the unique w of length `width` with d_E(Rep_reps(w), segment) <= budget.
///
/// Works block by block: any <= budget edit script maps each block of reps
/// equal symbols to a contiguous slice of the segment, so a backtracking
/// scan over block boundaries and per-block costs enumerates every
/// consistent w without materializing q^width candidates.
pub fn decode_repetition(
    segment: &QaryString,
    width: usize,
    reps: usize,
    budget: usize,
    repertoire: EditRepertoire,
) -> Result<QaryString> {
    let mut found: Vec<QaryString> = Vec::new();
    let mut prefix: Vec<u32> = Vec::with_capacity(width);
    search_repetition(
        segment,
        width,
        reps,
        budget,
        repertoire,
        0,
        &mut prefix,
        &mut found,
    );
    found.sort();
    found.dedup();
    match found.len() {
        0 => Err(Error::Undecodable(
            "repetition segment matches no candidate within the edit budget".into(),
        )),
        1 => Ok(found.pop().expect("len checked")),
        _ => Err(Error::InvariantViolation(format!(
            "{} candidates within distance {budget} of a {reps}-fold repetition",
            found.len()
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn search_repetition(
    segment: &QaryString,
    width: usize,
    reps: usize,
    budget: usize,
    repertoire: EditRepertoire,
    pos: usize,
    prefix: &mut Vec<u32>,
    found: &mut Vec<QaryString>,
) {
    let q = segment.q();
    if prefix.len() == width {
        // all blocks consumed; leftover symbols would need deletions beyond
        // the budget already spent, so require exact consumption
        if pos == segment.len() {
            found.push(QaryString::new(prefix.clone(), q).expect("symbols in range"));
        }
        return;
    }
    let lo = reps.saturating_sub(budget);
    let hi = (reps + budget).min(segment.len().saturating_sub(pos));
    for len in lo..=hi {
        let slice = segment.slice(pos, pos + len);
        for symbol in 0..q {
            let block = QaryString::new(vec![symbol; reps], q).expect("symbols in range");
            let cost = crate::channel::edit_distance(&block, &slice, repertoire);
            if cost <= budget {
                prefix.push(symbol);
                search_repetition(
                    segment,
                    width,
                    reps,
                    budget - cost,
                    repertoire,
                    pos + len,
                    prefix,
                    found,
                );
                prefix.pop();
            }
        }
    }
}
