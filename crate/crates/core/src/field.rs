//! Prime-field and binary-extension-field arithmetic.
//!
//! `PrimeField` backs the polynomial cover-free families used in graph
//! recoloring; `BinaryField` backs the Reed-Solomon erasure syndrome of the
//! substring-edit codes. Both are small, with desk-scale moduli, so plain
//! modular arithmetic is enough.

use crate::error::{Error, Result};

/// Returns the smallest prime strictly greater than `x`.
///
/// Trial division; every modulus constructed in this crate stays well below
/// the point where that would hurt.
pub fn prime_after(x: u64) -> u64 {
    let mut candidate = x + 1;
    loop {
        if is_prime(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_Q with elements `0..Q-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::InvalidInput(format!("{modulus} is not prime")));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.modulus) {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        Ok(self.pow(a, self.modulus - 2))
    }
}

/// A polynomial over a prime field; `coeffs[j]` multiplies `x^j`. Trailing
/// zeros are kept so fixed-width digit indexing stays aligned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(coeffs: Vec<u64>) -> Self {
        Poly { coeffs }
    }

    /// Horner evaluation of `p(point)` in `field`.
    pub fn eval(&self, field: &PrimeField, point: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, point), c % field.modulus());
        }
        acc
    }
}

/// Horner evaluation of the polynomial whose coefficients are the base-Q
/// digits of `index` (least-significant digit = constant term), without
/// materializing the digit vector. `width` bounds the number of digits.
pub fn eval_digit_poly(field: &PrimeField, index: u64, width: u32, point: u64) -> u64 {
    let q = field.modulus();
    let mut digits = [0u64; 64];
    debug_assert!(width as usize <= 64);
    let mut rest = index;
    let mut top = 0usize;
    for (j, d) in digits.iter_mut().enumerate().take(width as usize) {
        *d = rest % q;
        if *d != 0 {
            top = j;
        }
        rest /= q;
    }
    debug_assert_eq!(rest, 0, "index does not fit in {width} base-{q} digits");
    let mut acc = 0u64;
    for j in (0..=top).rev() {
        acc = field.add(field.mul(acc, point), digits[j]);
    }
    acc
}

// --- GF(2^l) ---

/// The binary extension field GF(2^l), elements are l-bit words.
///
/// The reduction polynomial is the lowest-weight irreducible of degree `l`,
/// ties broken by smallest bit pattern; it is recomputed deterministically at
/// construction so serialized syndromes are reproducible. Fields up to
/// l = 16 carry log/exp tables for O(1) multiplication.
#[derive(Debug, Clone)]
pub struct BinaryField {
    degree: u32,
    reduction: u64,
    order: u64,
    log: Vec<u32>,
    exp: Vec<u64>,
    generator: u64,
}

const TABLE_DEGREE_MAX: u32 = 16;

impl BinaryField {
    pub fn new(degree: u32) -> Result<Self> {
        if degree == 0 || degree > 32 {
            return Err(Error::ParameterEnvelope(format!(
                "extension degree {degree} outside 1..=32"
            )));
        }
        let reduction = lowest_weight_irreducible(degree);
        let order = (1u64 << degree) - 1;
        let mut field = BinaryField {
            degree,
            reduction,
            order,
            log: Vec::new(),
            exp: Vec::new(),
            generator: 1,
        };
        field.generator = field.find_generator();
        if degree <= TABLE_DEGREE_MAX {
            field.build_tables();
        }
        Ok(field)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn reduction_poly(&self) -> u64 {
        self.reduction
    }

    /// Number of elements, 2^l.
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    /// A fixed generator of the multiplicative group (smallest by value).
    pub fn generator(&self) -> u64 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.log.is_empty() {
            let idx = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % self.order;
            return self.exp[idx as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, mut b: u64) -> u64 {
        let mut acc = 0u64;
        let mut shifted = a;
        let top = 1u64 << self.degree;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= shifted;
            }
            shifted <<= 1;
            if shifted & top != 0 {
                shifted ^= self.reduction;
            }
            b >>= 1;
        }
        acc
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        if !self.log.is_empty() {
            let idx = (self.order - self.log[a as usize] as u64) % self.order;
            return Ok(self.exp[idx as usize]);
        }
        Ok(self.pow(a, self.order - 1))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn build_tables(&mut self) {
        let size = self.size() as usize;
        let mut log = vec![0u32; size];
        let mut exp = vec![0u64; size];
        let mut acc = 1u64;
        for i in 0..self.order {
            exp[i as usize] = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_slow(acc, self.generator);
        }
        debug_assert_eq!(acc, 1, "generator order mismatch");
        self.log = log;
        self.exp = exp;
    }

    fn find_generator(&self) -> u64 {
        if self.order == 1 {
            return 1;
        }
        let factors = prime_factors(self.order);
        'outer: for g in 2..self.size() {
            for &p in &factors {
                if self.pow_slow(g, self.order / p) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    fn pow_slow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Lowest-weight irreducible polynomial of the given degree over GF(2),
/// smallest bit pattern among those of minimal weight. Returned as the full
/// polynomial bitmask including the x^degree term.
pub fn lowest_weight_irreducible(degree: u32) -> u64 {
    if degree == 1 {
        return 0b11; // x + 1
    }
    let top = 1u64 << degree;
    // Candidates have odd constant term; search by weight then value.
    for weight in [3u32, 5, 7, 9] {
        let interior = weight - 2; // terms strictly between x^degree and 1
        let mut best: Option<u64> = None;
        let mut combo: Vec<u32> = (1..=interior).collect();
        loop {
            let mut mask = top | 1;
            for &e in &combo {
                mask |= 1u64 << e;
            }
            if gf2_poly_is_irreducible(mask, degree) {
                best = Some(match best {
                    Some(b) if b <= mask => b,
                    _ => mask,
                });
            }
            // next combination of `interior` exponents from 1..degree-1
            if !next_combination(&mut combo, degree - 1) {
                break;
            }
        }
        if let Some(mask) = best {
            return mask;
        }
    }
    unreachable!("irreducible polynomial of degree {degree} with weight <= 9 exists for degree <= 32")
}

fn next_combination(combo: &mut [u32], max_value: u32) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < max_value - (k - 1 - i) as u32 {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducibility over GF(2) via x^(2^d) = x (mod f) and gcd checks at the
/// maximal proper subfield exponents.
fn gf2_poly_is_irreducible(f: u64, degree: u32) -> bool {
    if degree == 1 {
        return true; // x and x+1
    }
    // x^(2^degree) mod f must equal x
    let mut x_pow = 0b10u64; // x
    for _ in 0..degree {
        x_pow = gf2_polymod_mul(x_pow, x_pow, f, degree);
    }
    if x_pow != 0b10 {
        return false;
    }
    for &p in &prime_factors(degree as u64) {
        let sub = degree / p as u32;
        let mut y = 0b10u64;
        for _ in 0..sub {
            y = gf2_polymod_mul(y, y, f, degree);
        }
        // gcd(f, x^(2^(degree/p)) - x) must be 1
        if gf2_poly_gcd(f, y ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

fn gf2_polymod_mul(a: u64, b: u64, f: u64, degree: u32) -> u64 {
    let mut acc = 0u64;
    let top = 1u64 << degree;
    let mut shifted = a;
    let mut rest = b;
    while rest != 0 {
        if rest & 1 == 1 {
            acc ^= shifted;
        }
        shifted <<= 1;
        if shifted & top != 0 {
            shifted ^= f;
        }
        rest >>= 1;
    }
    acc
}

fn gf2_poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let mut r = a;
        let db = 63 - b.leading_zeros();
        loop {
            if r == 0 {
                break;
            }
            let dr = 63 - r.leading_zeros();
            if dr < db {
                break;
            }
            r ^= b << (dr - db);
        }
        a = b;
        b = r;
    }
    a
}

/// A polynomial over GF(2^l), `coeffs[j]` multiplies x^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfPoly {
    pub coeffs: Vec<u64>,
}

impl BfPoly {
    pub fn eval(&self, field: &BinaryField, point: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, point), c);
        }
        acc
    }
}

/// Lagrange interpolation over GF(2^l): the unique polynomial of degree
/// `< points.len()` through all `(location, value)` pairs.
pub fn bf_interpolate(field: &BinaryField, points: &[(u64, u64)]) -> Result<BfPoly> {
    let m = points.len();
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in points.iter().skip(i + 1) {
            if xi == xj {
                return Err(Error::InvalidInput(format!(
                    "duplicate interpolation location {xi}"
                )));
            }
        }
    }
    // master = prod (x - x_i); char 2, so subtraction is xor
    let mut master = vec![0u64; m + 1];
    master[0] = 1;
    for (deg, &(xi, _)) in points.iter().enumerate() {
        // multiply by (x + xi)
        for j in (0..=deg).rev() {
            let c = master[j];
            master[j + 1] ^= c;
            master[j] = field.mul(c, xi);
        }
    }
    let mut out = vec![0u64; m];
    let mut basis = vec![0u64; m];
    for &(xi, yi) in points {
        // basis = master / (x + xi), synthetic division
        let mut carry = master[m];
        for j in (0..m).rev() {
            basis[j] = carry;
            carry = field.add(master[j], field.mul(carry, xi));
        }
        debug_assert_eq!(carry, 0);
        // denominator = prod_{j != i} (xi + xj) = basis(xi)
        let mut denom = 0u64;
        for j in (0..m).rev() {
            denom = field.add(field.mul(denom, xi), basis[j]);
        }
        let scale = field.div(yi, denom)?;
        for j in 0..m {
            out[j] = field.add(out[j], field.mul(scale, basis[j]));
        }
    }
    Ok(BfPoly { coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent trial-division oracle used to freeze prime_after values.
    fn oracle_next_prime(x: u64) -> u64 {
        let naive_is_prime = |n: u64| n >= 2 && (2..n).all(|d| !n.is_multiple_of(d));
        (x + 1..).find(|&c| naive_is_prime(c)).unwrap()
    }

    #[test]
    fn prime_after_small_cases() {
        assert_eq!(prime_after(1), 2);
        assert_eq!(prime_after(8), 11);
        assert_eq!(oracle_next_prime(2048), 2053);
        assert_eq!(prime_after(2048), 2053);
        for x in 1..500 {
            let p = prime_after(x);
            assert_eq!(p, oracle_next_prime(x));
            assert!(p > x && is_prime(p));
            assert!((x + 1..p).all(|c| !is_prime(c)));
        }
    }

    #[test]
    fn poly_eval_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let identity = Poly::new(vec![0, 1]);
        assert_eq!(identity.eval(&f5, 2), 2);
        // x^2 - x at 2 is 4 - 2 = 2 mod 5; -1 is 4
        let p = Poly::new(vec![0, 4, 1]);
        assert_eq!(p.eval(&f5, 2), 2);
        let zero = Poly::new(vec![0, 0, 0]);
        for a in 0..5 {
            assert_eq!(zero.eval(&f5, a), 0);
        }
    }

    #[test]
    fn digit_poly_matches_explicit_poly() {
        let f7 = PrimeField::new(7).unwrap();
        // index 38 = 3 + 5*7 -> coeffs (3, 5)
        let explicit = Poly::new(vec![3, 5]);
        for a in 0..7 {
            assert_eq!(eval_digit_poly(&f7, 38, 2, a), explicit.eval(&f7, a));
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 {
                        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1 % q);
                    }
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn binary_field_axioms_exhaustive() {
        for l in 1..=4u32 {
            let f = BinaryField::new(l).unwrap();
            let size = f.size();
            for a in 0..size {
                for b in 0..size {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, 1), a);
                    if a != 0 {
                        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    }
                    for c in 0..size {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn known_reduction_polys() {
        assert_eq!(lowest_weight_irreducible(1), 0b11);
        assert_eq!(lowest_weight_irreducible(2), 0b111);
        assert_eq!(lowest_weight_irreducible(3), 0b1011);
        assert_eq!(lowest_weight_irreducible(4), 0b10011);
        for l in 1..=32u32 {
            let f = lowest_weight_irreducible(l);
            assert!(gf2_poly_is_irreducible(f, l), "degree {l}");
            assert_eq!(f >> l, 1);
            assert_eq!(f & 1, 1);
        }
    }

    #[test]
    fn generator_has_full_order() {
        for l in [1u32, 2, 3, 4, 8] {
            let f = BinaryField::new(l).unwrap();
            let g = f.generator();
            let mut seen = std::collections::HashSet::new();
            let mut acc = 1u64;
            for _ in 0..f.size() - 1 {
                seen.insert(acc);
                acc = f.mul(acc, g);
            }
            assert_eq!(acc, 1);
            assert_eq!(seen.len(), (f.size() - 1) as usize);
        }
    }

    #[test]
    fn interpolate_constant() {
        let f = BinaryField::new(3).unwrap();
        let p = bf_interpolate(&f, &[(0, 5)]).unwrap();
        assert_eq!(p.coeffs, vec![5]);
    }

    #[test]
    fn interpolate_linear_two_points() {
        let f = BinaryField::new(3).unwrap();
        let p = bf_interpolate(&f, &[(1, 1), (2, 2)]).unwrap();
        assert_eq!(p.eval(&f, 1), 1);
        assert_eq!(p.eval(&f, 2), 2);
        assert_eq!(p.coeffs.len(), 2);
    }

    #[test]
    fn interpolate_rejects_duplicates() {
        let f = BinaryField::new(3).unwrap();
        assert!(matches!(
            bf_interpolate(&f, &[(1, 1), (1, 2)]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn interpolate_round_trip_degree_two() {
        let f = BinaryField::new(4).unwrap();
        let original = BfPoly { coeffs: vec![7, 3, 9] };
        let pts: Vec<(u64, u64)> = [2u64, 5, 11]
            .iter()
            .map(|&x| (x, original.eval(&f, x)))
            .collect();
        let back = bf_interpolate(&f, &pts).unwrap();
        assert_eq!(back, original);
    }

    proptest! {
        #[test]
        fn interpolation_round_trip(l in 3u32..=8, seed in any::<u64>()) {
            let f = BinaryField::new(l).unwrap();
            let mut rng = crate::rng::SplitMix64::new(seed);
            let count = 1 + (rng.below(6) as usize).min(f.size() as usize - 1);
            let mut locs = Vec::new();
            while locs.len() < count {
                let c = rng.below(f.size());
                if !locs.contains(&c) {
                    locs.push(c);
                }
            }
            let pts: Vec<(u64, u64)> = locs.iter().map(|&x| (x, rng.below(f.size()))).collect();
            let p = bf_interpolate(&f, &pts).unwrap();
            prop_assert!(p.coeffs.len() <= count);
            for &(x, y) in &pts {
                prop_assert_eq!(p.eval(&f, x), y);
            }
        }
    }
}
