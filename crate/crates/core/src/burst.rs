//! Codes for bursts of deletions and for long substring edits.
//!
//! When the error is one long burst (or a few long substring edits), a
//! two-part syndrome splits the work: phi1 pins down the erased content
//! (interleaved parity bits for a single burst, a Reed-Solomon erasure
//! syndrome for k substring edits), and phi2 is a two-round coloring of the
//! graph whose edges join phi1-equal confusable strings. The phi1
//! constraint collapses each candidate position to at most one candidate
//! string, so the graph is sparse enough to color cheaply and phi2 picks
//! the true input out of the resulting clique.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::channel::QaryString;
use crate::coloring::{ColorGraph, Colorer, ColoringSpec, Syndrome};
use crate::coverfree::binomial;
use crate::error::{Error, Result};
use crate::field::{bf_interpolate, BfPoly, BinaryField};

// --- Bounds (substring edits) ---

/// (Hamming, Gilbert-Varshamov) redundancy bounds in bits for codes
/// correcting k substring edits of length at most l on n-bit inputs.
pub fn bounds_sse(n: usize, k: usize, l: usize) -> Result<(f64, f64)> {
    if k < 1 || l < 1 || k * l > n {
        return Err(Error::InvalidInput(format!(
            "need k, l >= 1 and k*l <= n, got n={n} k={k} l={l}"
        )));
    }
    let choose = binomial(n as u64, k as u64)
        .ok_or_else(|| Error::ParameterEnvelope("binomial overflows".into()))? as f64;
    let hamming = choose.log2().max((k * l) as f64);
    // log2(degree bound + 1) with degree bound (n (l+1)^2 2^l)^(2k)
    let log2_delta =
        2.0 * k as f64 * ((n as f64).log2() + 2.0 * ((l + 1) as f64).log2() + l as f64);
    let gv = if log2_delta < 52.0 {
        (log2_delta.exp2() + 1.0).log2()
    } else {
        log2_delta
    };
    Ok((hamming, gv))
}

// --- Burst deletions: interleaved parity + coloring ---

/// Parameters of the burst-deletion code: binary strings of length n, one
/// burst of at most l deletions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurstParams {
    pub n: usize,
    pub l: usize,
}

impl BurstParams {
    pub fn new(n: usize, l: usize) -> Result<Self> {
        if l < 1 || l > n {
            return Err(Error::InvalidInput(format!("need 1 <= l <= n, got n={n} l={l}")));
        }
        Ok(BurstParams { n, l })
    }
}

/// Interleaved parity: bit j (0-indexed) is the XOR of x at 1-indexed
/// positions congruent to j+1 mod l.
pub fn phi1_burst(x: &QaryString, l: usize) -> Vec<u8> {
    let mut parity = vec![0u8; l];
    for (idx, &sym) in x.symbols().iter().enumerate() {
        parity[idx % l] ^= sym as u8;
    }
    parity
}

/// All length-n strings matching `parity` that can yield `y` by inserting a
/// single run of n - |y| symbols: one candidate per insertion position at
/// most, because the run occupies distinct parity classes. Deduplicated and
/// sorted.
pub fn burst_candidates(y: &QaryString, n: usize, l: usize, parity: &[u8]) -> Vec<QaryString> {
    debug_assert_eq!(parity.len(), l);
    let d = match n.checked_sub(y.len()) {
        Some(d) if d <= l => d,
        _ => return Vec::new(),
    };
    let mut out: HashSet<QaryString> = HashSet::new();
    'positions: for pos in 0..=y.len() {
        // z = y[..pos] ++ (d unknowns) ++ y[pos..]
        let mut class_acc = parity.to_vec();
        for (idx, &sym) in y.symbols().iter().enumerate() {
            let z_idx = if idx < pos { idx } else { idx + d };
            class_acc[z_idx % l] ^= sym as u8;
        }
        // class_acc now holds, per class, the XOR the unknowns must supply;
        // classes without an unknown must have come out zero
        let mut unknown_of_class: Vec<Option<usize>> = vec![None; l];
        for offset in 0..d {
            unknown_of_class[(pos + offset) % l] = Some(offset);
        }
        let mut run = vec![0u32; d];
        for (class, slot) in unknown_of_class.iter().enumerate() {
            match slot {
                Some(offset) => run[*offset] = class_acc[class] as u32,
                None => {
                    if class_acc[class] != 0 {
                        continue 'positions;
                    }
                }
            }
        }
        out.insert(y.splice(pos, 0, &run));
    }
    let mut list: Vec<QaryString> = out.into_iter().collect();
    list.sort();
    list
}

/// The graph phi2 colors: vertices are length-n bit strings with one parity
/// value, adjacent iff they share a burst-deletion output.
#[derive(Clone)]
pub struct BurstFiberGraph {
    pub params: BurstParams,
    pub parity: Vec<u8>,
}

impl ColorGraph for BurstFiberGraph {
    fn n(&self) -> usize {
        self.params.n
    }

    fn q(&self) -> u32 {
        2
    }

    fn degree_bound(&self) -> u64 {
        let (n, l) = (self.params.n as u64, self.params.l as u64);
        (l + 1) * (n + 1) * (n + l + 1)
    }

    fn neighbors(&self, x: &QaryString) -> Vec<QaryString> {
        let (n, l) = (self.params.n, self.params.l);
        let mut out: HashSet<QaryString> = HashSet::new();
        for d in 1..=l.min(n) {
            for start in 0..=n - d {
                let y = x.delete_run(start, d);
                for z in burst_candidates(&y, n, l, &self.parity) {
                    if &z != x {
                        out.insert(z);
                    }
                }
            }
        }
        let mut list: Vec<QaryString> = out.into_iter().collect();
        list.sort();
        list
    }
}

/// Burst-deletion encoder/decoder: phi1 = l parity bits, phi2 = two-round
/// coloring of the parity fiber.
pub struct BurstCode {
    params: BurstParams,
    spec: ColoringSpec,
    colorers: RefCell<HashMap<Vec<u8>, Rc<Colorer<BurstFiberGraph>>>>,
}

impl BurstCode {
    pub fn new(params: BurstParams) -> Result<Self> {
        let probe = BurstFiberGraph { params, parity: vec![0; params.l] };
        let spec = ColoringSpec::for_graph(&probe)?;
        Ok(BurstCode { params, spec, colorers: Default::default() })
    }

    pub fn params(&self) -> &BurstParams {
        &self.params
    }

    pub fn spec(&self) -> &ColoringSpec {
        &self.spec
    }

    pub fn phi2_bits(&self) -> u32 {
        self.spec.bits()
    }

    /// Total declared redundancy in bits: l parity bits plus the coloring.
    pub fn redundancy_bits(&self) -> u32 {
        self.params.l as u32 + self.phi2_bits()
    }

    fn colorer_for(&self, parity: &[u8]) -> Rc<Colorer<BurstFiberGraph>> {
        if let Some(c) = self.colorers.borrow().get(parity) {
            return Rc::clone(c);
        }
        let graph = BurstFiberGraph { params: self.params, parity: parity.to_vec() };
        let colorer = Rc::new(Colorer::with_spec(graph, self.spec.clone()));
        self.colorers.borrow_mut().insert(parity.to_vec(), Rc::clone(&colorer));
        colorer
    }

    pub fn phi2(&self, x: &QaryString) -> Result<Syndrome> {
        self.check_input(x)?;
        self.colorer_for(&phi1_burst(x, self.params.l)).syndrome(x)
    }

    pub fn encode(&self, x: &QaryString) -> Result<(Vec<u8>, Syndrome)> {
        self.check_input(x)?;
        let parity = phi1_burst(x, self.params.l);
        let phi2 = self.colorer_for(&parity).syndrome(x)?;
        Ok((parity, phi2))
    }

    /// Recovers x from a y produced by deleting at most l consecutive bits.
    pub fn decode(&self, y: &QaryString, parity: &[u8], phi2: &Syndrome) -> Result<QaryString> {
        if parity.len() != self.params.l {
            return Err(Error::InvalidInput(format!(
                "parity length {} does not match l = {}",
                parity.len(),
                self.params.l
            )));
        }
        if y.len() > self.params.n || self.params.n - y.len() > self.params.l {
            return Err(Error::Undecodable(format!(
                "received length {} outside a burst of at most {} deletions from {}",
                y.len(),
                self.params.l,
                self.params.n
            )));
        }
        let candidates = burst_candidates(y, self.params.n, self.params.l, parity);
        if candidates.is_empty() {
            return Err(Error::Undecodable(
                "no insertion position satisfies the parity syndrome".into(),
            ));
        }
        let colorer = self.colorer_for(parity);
        let mut matches = Vec::new();
        for z in candidates {
            if !colorer.could_have_color(&z, phi2.value)? {
                continue;
            }
            if colorer.color_value(&z)? == phi2.value {
                matches.push(z);
            }
        }
        match matches.len() {
            0 => Err(Error::Undecodable("no candidate carries the coloring syndrome".into())),
            1 => Ok(matches.pop().expect("len checked")),
            _ => Err(Error::InvariantViolation(format!(
                "{} parity-consistent candidates share the coloring; they form a clique and must differ",
                matches.len()
            ))),
        }
    }

    fn check_input(&self, x: &QaryString) -> Result<()> {
        if x.len() != self.params.n || x.q() != 2 {
            return Err(Error::InvalidInput(format!(
                "input must be a length-{} bit string",
                self.params.n
            )));
        }
        Ok(())
    }
}

// --- Reed-Solomon erasure syndrome over GF(2^l) ---

/// Systematic Reed-Solomon evaluation code: data symbols are the values of
/// a degree-<m polynomial at the first m locations, parity symbols its
/// values at kappa further locations. Any kappa erasures are recoverable.
/// Locations are 0, 1, g, g^2, ... with g the field's fixed generator.
pub struct RsCode {
    field: BinaryField,
    pub m: usize,
    pub kappa: usize,
    locations: Vec<u64>,
    /// Parity-check rows: H[j][i] = w_i * loc_i^j, with w_i the inverse of
    /// prod_{t != i} (loc_i - loc_t); every codeword satisfies H c = 0.
    check: Vec<Vec<u64>>,
}

impl RsCode {
    pub fn new(l: u32, m: usize, kappa: usize) -> Result<Self> {
        let field = BinaryField::new(l)?;
        let total = m + kappa;
        if (total as u64) > field.size() {
            return Err(Error::ParameterEnvelope(format!(
                "field GF(2^{l}) has {} elements, fewer than the {total} evaluation points needed",
                field.size()
            )));
        }
        if m == 0 {
            return Err(Error::InvalidInput("need at least one data symbol".into()));
        }
        let mut locations = Vec::with_capacity(total);
        locations.push(0u64);
        let mut acc = 1u64;
        while locations.len() < total {
            locations.push(acc);
            acc = field.mul(acc, field.generator());
        }
        // column multipliers w_i
        let mut check = vec![vec![0u64; total]; kappa];
        for i in 0..total {
            let mut denom = 1u64;
            for t in 0..total {
                if t != i {
                    denom = field.mul(denom, field.add(locations[i], locations[t]));
                }
            }
            let w = field.inv(denom)?;
            let mut pow = w;
            for row in check.iter_mut().take(kappa) {
                row[i] = pow;
                pow = field.mul(pow, locations[i]);
            }
        }
        Ok(RsCode { field, m, kappa, locations, check })
    }

    pub fn field(&self) -> &BinaryField {
        &self.field
    }

    pub fn total_len(&self) -> usize {
        self.m + self.kappa
    }

    /// Parity symbols for the given data, by Lagrange interpolation.
    pub fn syndrome(&self, data: &[u64]) -> Result<Vec<u64>> {
        if data.len() != self.m {
            return Err(Error::InvalidInput(format!(
                "expected {} data symbols, got {}",
                self.m,
                data.len()
            )));
        }
        if self.kappa == 0 {
            return Ok(Vec::new());
        }
        let points: Vec<(u64, u64)> = self.locations[..self.m]
            .iter()
            .copied()
            .zip(data.iter().copied())
            .collect();
        let poly = bf_interpolate(&self.field, &points)?;
        Ok(self.locations[self.m..]
            .iter()
            .map(|&loc| poly.eval(&self.field, loc))
            .collect())
    }

    /// Recovers the full codeword from coordinates with at most kappa
    /// erasures, by interpolating the data polynomial through m known
    /// coordinates and checking the rest. Undecodable if more than kappa
    /// coordinates are missing or the known coordinates are inconsistent.
    pub fn erasure_decode(&self, coords: &[Option<u64>]) -> Result<Vec<u64>> {
        if coords.len() != self.total_len() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                self.total_len(),
                coords.len()
            )));
        }
        let erased: Vec<usize> = (0..coords.len()).filter(|&i| coords[i].is_none()).collect();
        if erased.len() > self.kappa {
            return Err(Error::Undecodable(format!(
                "{} erasures exceed the correctable {}",
                erased.len(),
                self.kappa
            )));
        }
        let known: Vec<(u64, u64)> = (0..coords.len())
            .filter_map(|i| coords[i].map(|v| (self.locations[i], v)))
            .collect();
        let poly = bf_interpolate(&self.field, &known[..self.m])?;
        for &(loc, val) in &known[self.m..] {
            if poly.eval(&self.field, loc) != val {
                return Err(Error::Undecodable(
                    "known coordinates are not consistent with any codeword".into(),
                ));
            }
        }
        Ok(self
            .locations
            .iter()
            .enumerate()
            .map(|(i, &loc)| coords[i].unwrap_or_else(|| poly.eval(&self.field, loc)))
            .collect())
    }

    /// Interpolated data polynomial of a full codeword (test support).
    pub fn data_poly(&self, data: &[u64]) -> Result<BfPoly> {
        let points: Vec<(u64, u64)> = self.locations[..self.m]
            .iter()
            .copied()
            .zip(data.iter().copied())
            .collect();
        bf_interpolate(&self.field, &points)
    }

    /// Syndrome-space erasure solve used by the hot enumeration path: given
    /// the codeword with erased positions, solves H c = 0 for the erased
    /// values through a cached inverse of the erased submatrix, and checks
    /// the leftover rows. Equivalent to `erasure_decode`.
    fn solve_erasures(
        &self,
        coords: &mut [u64],
        erased: &[usize],
        cache: &mut SolveCache,
    ) -> bool {
        let e = erased.len();
        if e == 0 {
            // all rows must check out
            return (0..self.kappa).all(|j| self.row_sum(coords, j, erased) == 0);
        }
        debug_assert!(e <= self.kappa);
        let f = &self.field;
        let inverse = cache.entry(erased.to_vec()).or_insert_with(|| {
            let mut m: Vec<Vec<u64>> =
                (0..e).map(|j| erased.iter().map(|&i| self.check[j][i]).collect()).collect();
            invert_matrix(f, &mut m).expect("erased submatrix of a Vandermonde-type check is invertible")
        });
        // rhs_j = sum over known coordinates of H[j][i] c_i
        let rhs: Vec<u64> = (0..e).map(|j| self.row_sum(coords, j, erased)).collect();
        for (slot, &i) in erased.iter().enumerate() {
            let mut acc = 0u64;
            for (j, &r) in rhs.iter().enumerate() {
                acc = f.add(acc, f.mul(inverse[slot][j], r));
            }
            coords[i] = acc;
        }
        // leftover rows verify consistency when fewer than kappa erasures
        ((e)..self.kappa).all(|j| self.row_sum(coords, j, &[]) == 0)
    }

    fn row_sum(&self, coords: &[u64], row: usize, skip: &[usize]) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if skip.contains(&i) {
                continue;
            }
            acc = f.add(acc, f.mul(self.check[row][i], c));
        }
        acc
    }
}

fn invert_matrix(field: &BinaryField, m: &mut [Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let n = m.len();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r][col] != 0)
            .ok_or_else(|| Error::InvariantViolation("singular matrix".into()))?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = field.inv(m[col][col])?;
        for j in 0..n {
            m[col][j] = field.mul(m[col][j], scale);
            inv[col][j] = field.mul(inv[col][j], scale);
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let factor = m[r][col];
                for j in 0..n {
                    let a = field.mul(factor, m[col][j]);
                    let b = field.mul(factor, inv[col][j]);
                    m[r][j] = field.add(m[r][j], a);
                    inv[r][j] = field.add(inv[r][j], b);
                }
            }
        }
    }
    Ok(inv)
}

// --- Substring edits: RS phi1 + coloring phi2 ---

/// Parameters of the k l-substring-edit code: n-bit strings split into
/// n/l blocks viewed as GF(2^l) symbols; the RS syndrome has 4k parity
/// symbols (each of 2k insertion runs can straddle two blocks).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SseParams {
    pub n: usize,
    pub l: usize,
    pub k: usize,
}

impl SseParams {
    pub fn new(n: usize, l: usize, k: usize) -> Result<Self> {
        if k < 1 || l < 1 {
            return Err(Error::InvalidInput("need k >= 1 and l >= 1".into()));
        }
        if !n.is_multiple_of(l) {
            return Err(Error::InvalidInput(format!("l = {l} must divide n = {n}")));
        }
        let m = n / l;
        // RS length requirement: field size at least the evaluation count
        if l > 32 || (1u64 << l) < (m + 4 * k) as u64 {
            return Err(Error::ParameterEnvelope(format!(
                "field condition 2^l >= n/l + 4k fails: 2^{l} < {}",
                m + 4 * k
            )));
        }
        if k > 2 {
            return Err(Error::ParameterEnvelope(
                "k > 2 substring edits exceed the enumeration envelope".into(),
            ));
        }
        Ok(SseParams { n, l, k })
    }

    pub fn blocks(&self) -> usize {
        self.n / self.l
    }
}

/// Packs an n-bit string into n/l field symbols, first bit most significant
/// within each block.
pub fn pack_blocks(x: &QaryString, l: usize) -> Vec<u64> {
    debug_assert_eq!(x.len() % l, 0);
    x.symbols()
        .chunks(l)
        .map(|chunk| chunk.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
        .collect()
}

/// Cached inverses of erased-column submatrices, keyed by erasure pattern.
type SolveCache = HashMap<Vec<usize>, Vec<Vec<u64>>>;

/// The graph phi2 colors for substring edits: vertices share the RS
/// syndrome value and a channel output. Neighbors are enumerated by
/// choosing 2k non-overlapping (position, delete, insert) runs and solving
/// the inserted content from the syndrome.
#[derive(Clone)]
pub struct SseFiberGraph {
    pub params: SseParams,
    rs: Rc<RsCode>,
    pub phi1: Vec<u64>,
    solve_cache: Rc<RefCell<SolveCache>>,
}

impl ColorGraph for SseFiberGraph {
    fn n(&self) -> usize {
        self.params.n
    }

    fn q(&self) -> u32 {
        2
    }

    fn degree_bound(&self) -> u64 {
        let (n, l) = (self.params.n as u64, self.params.l as u64);
        ((n + 1) * (l + 1) * (l + 1)).pow(2 * self.params.k as u32)
    }

    fn neighbors(&self, x: &QaryString) -> Vec<QaryString> {
        let mut out = enumerate_fiber_candidates(
            &self.params,
            &self.rs,
            &self.phi1,
            x,
            2 * self.params.k,
            self.params.n,
            &mut self.solve_cache.borrow_mut(),
        );
        out.retain(|z| z != x);
        out.sort();
        out
    }
}

const UNKNOWN: u32 = u32::MAX;

/// Walks placements of non-overlapping (start, delete, insert) runs over a
/// base string and collects every syndrome-consistent fill.
struct FiberEnumerator<'a> {
    params: &'a SseParams,
    rs: &'a RsCode,
    phi1: &'a [u64],
    base: &'a QaryString,
    runs: usize,
    target_len: usize,
    chosen: Vec<(usize, usize, usize)>,
    template: Vec<u32>,
    out: HashSet<QaryString>,
}

/// All length-`target_len` strings obtainable from `base` by `runs`
/// replacements of a substring of length <= l with a new substring of
/// length <= l, whose block decomposition matches the RS syndrome `phi1`.
/// Each placement determines at most one candidate.
fn enumerate_fiber_candidates(
    params: &SseParams,
    rs: &RsCode,
    phi1: &[u64],
    base: &QaryString,
    runs: usize,
    target_len: usize,
    solve_cache: &mut SolveCache,
) -> Vec<QaryString> {
    let mut walker = FiberEnumerator {
        params,
        rs,
        phi1,
        base,
        runs,
        target_len,
        chosen: Vec::with_capacity(runs),
        template: Vec::with_capacity(target_len + params.l),
        out: HashSet::new(),
    };
    walker.place_next_run(0, solve_cache);
    let mut list: Vec<QaryString> = walker.out.into_iter().collect();
    list.sort();
    list
}

impl FiberEnumerator<'_> {
    fn place_next_run(&mut self, min_start: usize, solve_cache: &mut SolveCache) {
        if self.chosen.len() == self.runs {
            self.try_current_placement(solve_cache);
            return;
        }
        let l = self.params.l;
        for start in min_start..=self.base.len() {
            for del in 0..=l.min(self.base.len() - start) {
                for ins in 0..=l {
                    self.chosen.push((start, del, ins));
                    self.place_next_run(start + del, solve_cache);
                    self.chosen.pop();
                }
            }
        }
    }

    fn try_current_placement(&mut self, solve_cache: &mut SolveCache) {
        let l = self.params.l;
        let removed: usize = self.chosen.iter().map(|c| c.1).sum();
        let inserted: usize = self.chosen.iter().map(|c| c.2).sum();
        if self.base.len() + inserted != self.target_len + removed {
            return;
        }
        // the candidate with unknown symbols where the insertions landed
        self.template.clear();
        let mut cursor = 0usize;
        for &(start, del, ins) in &self.chosen {
            self.template.extend_from_slice(&self.base.symbols()[cursor..start]);
            self.template.extend(std::iter::repeat_n(UNKNOWN, ins));
            cursor = start + del;
        }
        self.template.extend_from_slice(&self.base.symbols()[cursor..]);
        debug_assert_eq!(self.template.len(), self.target_len);
        // blocks touched by an unknown run are erased
        let blocks = self.params.blocks();
        let mut coords: Vec<u64> = Vec::with_capacity(self.rs.total_len());
        let mut erased: Vec<usize> = Vec::new();
        for b in 0..blocks {
            let chunk = &self.template[b * l..(b + 1) * l];
            if chunk.contains(&UNKNOWN) {
                erased.push(b);
                coords.push(0);
            } else {
                coords.push(chunk.iter().fold(0u64, |acc, &bit| (acc << 1) | bit as u64));
            }
        }
        coords.extend_from_slice(self.phi1);
        if erased.len() > self.rs.kappa {
            return;
        }
        if !self.rs.solve_erasures(&mut coords, &erased, solve_cache) {
            return;
        }
        // known bits inside erased blocks must agree with the fill
        let mut symbols = self.template.clone();
        for &b in &erased {
            let value = coords[b];
            for offset in 0..l {
                let bit = ((value >> (l - 1 - offset)) & 1) as u32;
                let slot = b * l + offset;
                if symbols[slot] == UNKNOWN {
                    symbols[slot] = bit;
                } else if symbols[slot] != bit {
                    return;
                }
            }
        }
        if let Ok(z) = QaryString::new(symbols, 2) {
            self.out.insert(z);
        }
    }
}

/// k l-substring-edit encoder/decoder: phi1 = RS erasure syndrome of the
/// block decomposition (4k symbols of l bits), phi2 = two-round coloring of
/// the phi1 fiber.
pub struct SseCode {
    params: SseParams,
    rs: Rc<RsCode>,
    spec: ColoringSpec,
    colorers: RefCell<HashMap<Vec<u64>, Rc<Colorer<SseFiberGraph>>>>,
}

impl SseCode {
    pub fn new(params: SseParams) -> Result<Self> {
        let rs = Rc::new(RsCode::new(params.l as u32, params.blocks(), 4 * params.k)?);
        let probe = SseFiberGraph {
            params,
            rs: Rc::clone(&rs),
            phi1: vec![0; 4 * params.k],
            solve_cache: Default::default(),
        };
        let spec = ColoringSpec::for_graph(&probe)?;
        Ok(SseCode { params, rs, spec, colorers: Default::default() })
    }

    pub fn params(&self) -> &SseParams {
        &self.params
    }

    pub fn spec(&self) -> &ColoringSpec {
        &self.spec
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    /// phi1 redundancy in bits: 4k symbols of l bits.
    pub fn phi1_bits(&self) -> u32 {
        (4 * self.params.k * self.params.l) as u32
    }

    pub fn phi2_bits(&self) -> u32 {
        self.spec.bits()
    }

    pub fn redundancy_bits(&self) -> u32 {
        self.phi1_bits() + self.phi2_bits()
    }

    pub fn phi1(&self, x: &QaryString) -> Result<Vec<u64>> {
        self.check_input(x)?;
        self.rs.syndrome(&pack_blocks(x, self.params.l))
    }

    fn colorer_for(&self, phi1: &[u64]) -> Rc<Colorer<SseFiberGraph>> {
        if let Some(c) = self.colorers.borrow().get(phi1) {
            return Rc::clone(c);
        }
        let graph = SseFiberGraph {
            params: self.params,
            rs: Rc::clone(&self.rs),
            phi1: phi1.to_vec(),
            solve_cache: Default::default(),
        };
        let colorer = Rc::new(Colorer::with_spec(graph, self.spec.clone()));
        self.colorers.borrow_mut().insert(phi1.to_vec(), Rc::clone(&colorer));
        colorer
    }

    pub fn encode(&self, x: &QaryString) -> Result<(Vec<u64>, Syndrome)> {
        let phi1 = self.phi1(x)?;
        let phi2 = self.colorer_for(&phi1).syndrome(x)?;
        Ok((phi1, phi2))
    }

    /// Recovers x from a y produced by at most k substring edits of length
    /// at most l: enumerates edit placements on y, solves each candidate
    /// from the RS syndrome, and keeps the unique one carrying phi2.
    pub fn decode(&self, y: &QaryString, phi1: &[u64], phi2: &Syndrome) -> Result<QaryString> {
        if phi1.len() != 4 * self.params.k {
            return Err(Error::InvalidInput(format!(
                "phi1 must carry {} symbols, got {}",
                4 * self.params.k,
                phi1.len()
            )));
        }
        let spread = self.params.k * self.params.l;
        if y.len() + spread < self.params.n || y.len() > self.params.n + spread {
            return Err(Error::Undecodable(format!(
                "received length {} outside {} +/- {}",
                y.len(),
                self.params.n,
                spread
            )));
        }
        let colorer = self.colorer_for(phi1);
        let candidates = enumerate_fiber_candidates(
            &self.params,
            &self.rs,
            phi1,
            y,
            self.params.k,
            self.params.n,
            &mut colorer.graph().solve_cache.borrow_mut(),
        );
        if candidates.is_empty() {
            return Err(Error::Undecodable(
                "no edit placement is consistent with the RS syndrome".into(),
            ));
        }
        let mut matches = Vec::new();
        for z in candidates {
            if !colorer.could_have_color(&z, phi2.value)? {
                continue;
            }
            if colorer.color_value(&z)? == phi2.value {
                matches.push(z);
            }
        }
        match matches.len() {
            0 => Err(Error::Undecodable("no candidate carries the coloring syndrome".into())),
            1 => Ok(matches.pop().expect("len checked")),
            _ => Err(Error::InvariantViolation(format!(
                "{} syndrome-consistent candidates share the coloring",
                matches.len()
            ))),
        }
    }

    fn check_input(&self, x: &QaryString) -> Result<()> {
        if x.len() != self.params.n || x.q() != 2 {
            return Err(Error::InvalidInput(format!(
                "input must be a length-{} bit string",
                self.params.n
            )));
        }
        Ok(())
    }
}

/// Applies one substring edit (delete `del` at `start`, insert the given
/// bits) — the corruption the SSE code is tested against.
pub fn apply_substring_edit(
    x: &QaryString,
    start: usize,
    del: usize,
    insert: &[u32],
) -> Result<QaryString> {
    if start + del > x.len() {
        return Err(Error::InvalidInput("edit window out of range".into()));
    }
    Ok(x.splice(start, del, insert))
}
