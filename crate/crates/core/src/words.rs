//! Words over the alphabet `{0, .., k-1}`, word sets, exact counts and
//! the subset/composition enumeration shared by the rest of the crate.
//!
//! A word `x_1 x_2 .. x_n` is stored as the integer whose radix-`k` digits are
//! the letters, `x_1` most significant. With this encoding the de Bruijn shift
//! `x_1..x_n -> x_2..x_{n+1}` is `(code * k) % k^n + x_{n+1}`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `k^n` for which word sets, graphs and scans are materialized.
pub const WORD_SPACE_CAP: u64 = 1 << 20;

/// Word length `n` and alphabet size `k`, both at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    n: u32,
    k: u32,
}

impl Params {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n < 2 || k < 2 {
            return Err(Error::InvalidParams(format!(
                "need n >= 2 and k >= 2, got n={n}, k={k}"
            )));
        }
        if (k as u64).checked_pow(n).is_none() {
            return Err(Error::InvalidParams(format!(
                "k^n does not fit in 64 bits (n={n}, k={k})"
            )));
        }
        Ok(Params { n, k })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn k(self) -> u32 {
        self.k
    }

    /// `k^n`, the size of `A^n`.
    pub fn word_count(self) -> u64 {
        (self.k as u64).pow(self.n)
    }

    /// `k^(n-1)`, the number of nodes of the edge graph `B(n-1, k)`.
    pub fn node_count(self) -> u64 {
        (self.k as u64).pow(self.n - 1)
    }

    /// Errors unless `A^n` is small enough to materialize.
    pub fn ensure_enumerable(self) -> Result<()> {
        if self.word_count() > WORD_SPACE_CAP {
            return Err(Error::CapExceeded(format!(
                "k^n = {} exceeds the word-space cap {WORD_SPACE_CAP}",
                self.word_count()
            )));
        }
        Ok(())
    }

    pub fn check_removed(self, s: u64) -> Result<()> {
        if s > self.word_count() {
            return Err(Error::InvalidParams(format!(
                "s={s} exceeds k^n={}",
                self.word_count()
            )));
        }
        Ok(())
    }

    pub fn word(self, code: u64) -> Result<Word> {
        if code >= self.word_count() {
            return Err(Error::InvalidWord {
                text: code.to_string(),
                reason: format!("code must be below k^n = {}", self.word_count()),
            });
        }
        Ok(Word { code, params: self })
    }

    pub fn word_from_letters(self, letters: &[u32]) -> Result<Word> {
        if letters.len() != self.n as usize {
            return Err(Error::InvalidWord {
                text: format!("{letters:?}"),
                reason: format!("expected {} letters, got {}", self.n, letters.len()),
            });
        }
        let mut code = 0u64;
        for &x in letters {
            if x >= self.k {
                return Err(Error::InvalidWord {
                    text: format!("{letters:?}"),
                    reason: format!("letter {x} is not below k = {}", self.k),
                });
            }
            code = code * self.k as u64 + x as u64;
        }
        Ok(Word { code, params: self })
    }

    /// Parses the rendering produced by [`Word`]'s `Display`: a digit string
    /// when `k <= 10`, otherwise comma-separated decimal letters.
    pub fn parse_word(self, text: &str) -> Result<Word> {
        let text = text.trim();
        let bad = |reason: String| Error::InvalidWord {
            text: text.to_string(),
            reason,
        };
        let letters: Vec<u32> = if self.k <= 10 {
            text.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("{c:?} is not a digit"))))
                .collect::<Result<_>>()?
        } else {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| bad(format!("{part:?} is not a letter")))
                })
                .collect::<Result<_>>()?
        };
        self.word_from_letters(&letters).map_err(|e| match e {
            Error::InvalidWord { reason, .. } => bad(reason),
            other => other,
        })
    }
}

/// An element of `A^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    code: u64,
    params: Params,
}

impl Word {
    pub fn code(self) -> u64 {
        self.code
    }

    pub fn params(self) -> Params {
        self.params
    }

    pub fn letters(self) -> Vec<u32> {
        letters_of(self.code, self.params.n, self.params.k)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.letters(), self.params.k))
    }
}

/// Radix-`k` digits of `code`, most significant first, padded to `len`.
pub fn letters_of(mut code: u64, len: u32, k: u32) -> Vec<u32> {
    let mut out = vec![0u32; len as usize];
    for slot in out.iter_mut().rev() {
        *slot = (code % k as u64) as u32;
        code /= k as u64;
    }
    out
}

/// Renders a letter sequence: concatenated digits for `k <= 10`, otherwise
/// comma-separated decimals.
pub fn render_letters(letters: &[u32], k: u32) -> String {
    if k <= 10 {
        letters
            .iter()
            .map(|&x| char::from_digit(x, 10).expect("letter below 10"))
            .collect()
    } else {
        letters
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A set of words of a fixed length, kept as a strictly increasing list of codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordSet {
    params: Params,
    members: Vec<u64>,
}

impl WordSet {
    /// All of `A^n`.
    pub fn full(params: Params) -> Result<Self> {
        params.ensure_enumerable()?;
        Ok(WordSet {
            params,
            members: (0..params.word_count()).collect(),
        })
    }

    pub fn empty(params: Params) -> Self {
        WordSet {
            params,
            members: Vec::new(),
        }
    }

    /// Builds a set from codes in any order. Duplicates and out-of-range
    /// codes are rejected.
    pub fn from_codes<I: IntoIterator<Item = u64>>(params: Params, codes: I) -> Result<Self> {
        let mut members: Vec<u64> = codes.into_iter().collect();
        members.sort_unstable();
        if let Some(&last) = members.last() {
            if last >= params.word_count() {
                return Err(Error::InvalidWord {
                    text: last.to_string(),
                    reason: format!("code must be below k^n = {}", params.word_count()),
                });
            }
        }
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidWord {
                text: render_letters(&letters_of(w[0], params.n, params.k), params.k),
                reason: "listed more than once".into(),
            });
        }
        Ok(WordSet { params, members })
    }

    pub fn from_words(params: Params, words: &[Word]) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.params != params) {
            return Err(Error::InvalidWord {
                text: w.to_string(),
                reason: "word belongs to different (n, k)".into(),
            });
        }
        Self::from_codes(params, words.iter().map(|w| w.code))
    }

    /// Parses rendered words, e.g. `["001", "010"]`.
    pub fn parse<'a, I: IntoIterator<Item = &'a str>>(params: Params, items: I) -> Result<Self> {
        let codes = items
            .into_iter()
            .map(|t| params.parse_word(t).map(Word::code))
            .collect::<Result<Vec<_>>>()?;
        Self::from_codes(params, codes)
    }

    /// Survivors `A^n \ removed`.
    pub fn complement_of(params: Params, removed: &WordSet) -> Result<Self> {
        params.ensure_enumerable()?;
        if removed.params != params {
            return Err(Error::InvalidParams("removal set has different (n, k)".into()));
        }
        let mut out = Vec::with_capacity((params.word_count() as usize).saturating_sub(removed.len()));
        let mut gone = removed.members.iter().peekable();
        for code in 0..params.word_count() {
            if gone.peek() == Some(&&code) {
                gone.next();
            } else {
                out.push(code);
            }
        }
        Ok(WordSet {
            params,
            members: out,
        })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn codes(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, code: u64) -> bool {
        self.members.binary_search(&code).is_ok()
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        let params = self.params;
        self.members.iter().map(move |&code| Word { code, params })
    }

    /// Applies a letter permutation (`perm[x]` replaces `x`) to every word.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        let k = self.params.k;
        let mut seen = vec![false; k as usize];
        if perm.len() != k as usize
            || perm.iter().any(|&y| y >= k || std::mem::replace(&mut seen[y as usize], true))
        {
            return Err(Error::InvalidParams(format!("{perm:?} is not a permutation of 0..{k}")));
        }
        let codes = self.members.iter().map(|&c| {
            letters_of(c, self.params.n, k)
                .into_iter()
                .fold(0u64, |acc, x| acc * k as u64 + perm[x as usize] as u64)
        });
        Self::from_codes(self.params, codes)
    }
}

/// Exact nonnegative integer.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn checked_sub(&self, other: &BigCount) -> Option<BigCount> {
        (self.0 >= other.0).then(|| BigCount(&self.0 - &other.0))
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BigUint>()
            .map(BigCount)
            .map_err(|_| Error::InvalidParams(format!("{s:?} is not a nonnegative integer")))
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl std::iter::Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    /// `favorable / total`; the total must be positive.
    pub fn ratio(numer: &BigCount, denom: &BigCount) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(
            BigInt::from(numer.0.clone()),
            BigInt::from(denom.0.clone()),
        )))
    }

    pub fn from_integers(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(numer.into(), denom.into())))
    }

    /// Signed numerator over a nonzero denominator.
    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        ExactRational(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRational {
    /// `p/q`, or just `p` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("{s:?} is not a fraction p/q"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(ExactRational(BigRational::new(p, q)))
    }
}

/// `C(m, r)`, and 0 whenever `m < 0`, `r < 0` or `r > m`.
pub fn binomial(m: i64, r: i64) -> BigCount {
    if m < 0 || r < 0 || r > m {
        return BigCount::zero();
    }
    let r = r.min(m - r) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= m - i;
        acc /= i + 1;
    }
    BigCount(acc)
}

/// `C(m, r)` in machine words; `None` on overflow. Same zero convention.
pub fn binomial_u64(m: u64, r: u64) -> Option<u64> {
    if r > m {
        return Some(0);
    }
    let r = r.min(m - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        // acc * (m - i) / (i + 1) is exact at every step.
        acc = acc.checked_mul(m as u128 - i)? / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The `rank`-th `s`-subset of `{0, .., universe-1}` in colexicographic order.
pub fn unrank_subset(rank: &BigCount, universe: u64, s: usize) -> Result<Vec<u64>> {
    let total = binomial(universe as i64, s as i64);
    if *rank >= total {
        return Err(Error::RankOutOfRange {
            rank: rank.to_string(),
            total: total.to_string(),
        });
    }
    let mut out = vec![0u64; s];
    let mut rest = rank.0.clone();
    let mut upper = universe;
    for i in (1..=s).rev() {
        // Largest c in [i-1, upper) with C(c, i) <= rest.
        let (mut lo, mut hi) = (i as u64 - 1, upper - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if binomial(mid as i64, i as i64).0 <= rest {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        rest -= binomial(lo as i64, i as i64).0;
        out[i - 1] = lo;
        upper = lo;
    }
    Ok(out)
}

/// Machine-word counterpart of [`unrank_subset`], writing into `out`.
/// The caller guarantees `rank < C(universe, out.len())` and that the
/// binomials involved fit in `u64`.
pub(crate) fn unrank_subset_u64(mut rank: u64, universe: u64, out: &mut [u64]) {
    let mut upper = universe;
    for i in (1..=out.len()).rev() {
        let (mut lo, mut hi) = (i as u64 - 1, upper - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if binomial_u64(mid, i as u64).expect("binomial fits") <= rank {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        rank -= binomial_u64(lo, i as u64).expect("binomial fits");
        out[i - 1] = lo;
        upper = lo;
    }
}

/// Colexicographic rank of a strictly increasing index list.
pub fn rank_subset(subset: &[u64]) -> BigCount {
    debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as i64, i as i64 + 1))
        .sum()
}

/// Advances `subset` to its colex successor within `{0, .., universe-1}`.
/// Returns `false` (leaving `subset` untouched) when it was the last one.
pub(crate) fn next_colex(subset: &mut [u64], universe: u64) -> bool {
    let s = subset.len();
    for j in 0..s {
        let limit = if j + 1 < s { subset[j + 1] } else { universe };
        if subset[j] + 1 < limit {
            subset[j] += 1;
            for (i, slot) in subset[..j].iter_mut().enumerate() {
                *slot = i as u64;
            }
            return true;
        }
    }
    false
}

/// Every vector `(s_i)` with `sum weight_i * s_i = s` and `0 <= s_i <= max_i`
/// (`None` = unbounded), with the first coordinate varying slowest and
/// descending.
pub fn compositions(s: u64, weights: &[(u64, Option<u64>)]) -> std::vec::IntoIter<Vec<u64>> {
    fn go(
        rest: u64,
        weights: &[(u64, Option<u64>)],
        prefix: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        let Some((&(weight, max), tail)) = weights.split_first() else {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let top = rest.checked_div(weight).unwrap_or(0);
        let top = max.map_or(top, |m| top.min(m));
        for count in (0..=top).rev() {
            prefix.push(count);
            go(rest - count * weight, tail, prefix, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    if !weights.is_empty() {
        go(s, weights, &mut Vec::with_capacity(weights.len()), &mut out);
    }
    out.into_iter()
}

#[cfg(test)]
fn is_reduced(r: &ExactRational) -> bool {
    use num_integer::Integer;
    r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal(rows: usize) -> Vec<Vec<u64>> {
        let mut t = vec![vec![1u64]];
        for m in 1..=rows {
            let prev = &t[m - 1];
            let mut row = vec![1u64; m + 1];
            for r in 1..m {
                row[r] = prev[r - 1] + prev[r];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), 10.into());
        assert_eq!(binomial(3, 5), BigCount::zero());
        assert_eq!(binomial(-1, 0), BigCount::zero());
        assert_eq!(binomial(4, -1), BigCount::zero());
        let t = pascal(16);
        assert_eq!(t[16][8], 12870);
        assert_eq!(binomial(16, 8), t[16][8].into());
    }

    #[test]
    fn binomial_matches_pascal_and_sums() {
        let t = pascal(40);
        for (m, row) in t.iter().enumerate() {
            for (r, &v) in row.iter().enumerate() {
                assert_eq!(binomial(m as i64, r as i64), v.into(), "C({m},{r})");
                assert_eq!(binomial_u64(m as u64, r as u64), Some(v));
                assert_eq!(binomial(m as i64, r as i64), binomial(m as i64, (m - r) as i64));
            }
        }
        for m in 0..=20i64 {
            let total: BigCount = (0..=m).map(|r| binomial(m, r)).sum();
            assert_eq!(total, (1u64 << m).into());
        }
        assert_eq!(binomial_u64(200, 100), None);
    }

    #[test]
    fn word_rendering() {
        let p3 = Params::new(3, 2).unwrap();
        assert_eq!(p3.word(3).unwrap().to_string(), "011");
        let p4 = Params::new(4, 2).unwrap();
        assert_eq!(p4.parse_word("0011").unwrap().code(), 3);
        let p = Params::new(2, 3).unwrap();
        assert_eq!(p.word(5).unwrap().to_string(), "12");
        let big = Params::new(2, 12).unwrap();
        let w = big.word_from_letters(&[11, 3]).unwrap();
        assert_eq!(w.to_string(), "11,3");
        assert_eq!(big.parse_word("11,3").unwrap(), w);
    }

    #[test]
    fn word_parse_errors() {
        let p = Params::new(3, 2).unwrap();
        assert!(p.parse_word("012").is_err());
        assert!(p.parse_word("01").is_err());
        assert!(p.parse_word("0a1").is_err());
        assert!(Params::new(2, 12).unwrap().parse_word("12,0").is_err());
        assert!(Params::new(1, 2).is_err());
        assert!(Params::new(2, 1).is_err());
    }

    #[test]
    fn word_round_trip_exhaustive() {
        for (n, k) in [(2, 2), (3, 3), (4, 4), (6, 4), (12, 2), (3, 16)] {
            let p = Params::new(n, k).unwrap();
            assert!(p.word_count() <= 4096);
            for code in 0..p.word_count() {
                let w = p.word(code).unwrap();
                assert_eq!(p.word_from_letters(&w.letters()).unwrap(), w);
                assert_eq!(p.parse_word(&w.to_string()).unwrap(), w);
            }
        }
    }

    #[test]
    fn word_set_construction() {
        let p = Params::new(2, 2).unwrap();
        let s = WordSet::parse(p, ["11", "00"]).unwrap();
        assert_eq!(s.codes(), &[0, 3]);
        assert!(WordSet::parse(p, ["00", "00"]).is_err());
        assert!(WordSet::from_codes(p, [4]).is_err());
        let rest = WordSet::complement_of(p, &s).unwrap();
        assert_eq!(rest.codes(), &[1, 2]);
        assert_eq!(WordSet::full(p).unwrap().len(), 4);
        assert_eq!(s.relabel(&[1, 0]).unwrap(), s);
        assert!(s.relabel(&[0, 0]).is_err());
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(unrank_subset(&0.into(), 4, 2).unwrap(), vec![0, 1]);
        assert_eq!(unrank_subset(&5.into(), 4, 2).unwrap(), vec![2, 3]);
        assert!(unrank_subset(&6.into(), 4, 2).is_err());
        assert_eq!(unrank_subset(&0.into(), 5, 0).unwrap(), Vec::<u64>::new());
        for r in 0..560u64 {
            let sub = unrank_subset(&r.into(), 16, 3).unwrap();
            assert_eq!(rank_subset(&sub), r.into());
        }
    }

    #[test]
    fn colex_successor_walks_all_ranks() {
        for universe in 0..=16u64 {
            for s in 0..=universe.min(8) as usize {
                let total = binomial_u64(universe, s as u64).unwrap();
                let mut cur: Vec<u64> = (0..s as u64).collect();
                let mut fast = vec![0; s];
                for r in 0..total {
                    assert_eq!(rank_subset(&cur), r.into());
                    assert_eq!(unrank_subset(&r.into(), universe, s).unwrap(), cur);
                    unrank_subset_u64(r, universe, &mut fast);
                    assert_eq!(fast, cur);
                    let more = next_colex(&mut cur, universe);
                    assert_eq!(more, r + 1 < total);
                }
            }
        }
    }

    #[test]
    fn composition_examples() {
        let got: Vec<_> = compositions(2, &[(1, None), (2, None)]).collect();
        assert_eq!(got, vec![vec![2, 0], vec![0, 1]]);
        let got: Vec<_> = compositions(4, &[(1, Some(2)), (2, Some(1)), (4, Some(2))]).collect();
        assert_eq!(got, vec![vec![2, 1, 0], vec![0, 0, 1]]);
        let got: Vec<_> = compositions(0, &[(1, None), (3, Some(1))]).collect();
        assert_eq!(got, vec![vec![0, 0]]);
        assert_eq!(compositions(3, &[(2, None)]).count(), 0);
        assert_eq!(compositions(3, &[]).count(), 0);
    }

    #[test]
    fn rational_display_and_parse() {
        let r = ExactRational::ratio(&10.into(), &60.into()).unwrap();
        assert_eq!(r.to_string(), "1/6");
        assert!(is_reduced(&r));
        assert_eq!(ExactRational::zero().to_string(), "0");
        assert_eq!(ExactRational::ratio(&3.into(), &3.into()).unwrap().to_string(), "1");
        assert_eq!("2/4".parse::<ExactRational>().unwrap(), "1/2".parse().unwrap());
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!(ExactRational::ratio(&1.into(), &BigCount::zero()).is_err());
    }

    proptest! {
        #[test]
        fn compositions_are_exact_and_distinct(
            s in 0u64..12,
            weights in proptest::collection::vec((1u64..5, proptest::option::of(0u64..4)), 1..4),
        ) {
            let all: Vec<_> = compositions(s, &weights).collect();
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), all.len());
            for v in &all {
                let total: u64 = v.iter().zip(&weights).map(|(c, (w, _))| c * w).sum();
                prop_assert_eq!(total, s);
                for (c, (_, m)) in v.iter().zip(&weights) {
                    prop_assert!(m.is_none_or(|m| *c <= m));
                }
            }
            // brute-force count over the bounded box
            let mut count = 0usize;
            let bounds: Vec<u64> = weights.iter().map(|(w, m)| m.unwrap_or(s / w)).collect();
            let mut cur = vec![0u64; weights.len()];
            loop {
                if cur.iter().zip(&weights).map(|(c, (w, _))| c * w).sum::<u64>() == s {
                    count += 1;
                }
                let mut i = 0;
                while i < cur.len() && cur[i] == bounds[i] {
                    cur[i] = 0;
                    i += 1;
                }
                if i == cur.len() { break; }
                cur[i] += 1;
            }
            prop_assert_eq!(count, all.len());
        }

        #[test]
        fn rational_is_reduced(p in 0u64..10_000, q in 1u64..10_000) {
            let r = ExactRational::ratio(&p.into(), &q.into()).unwrap();
            prop_assert!(is_reduced(&r));
            prop_assert_eq!(r.to_string().parse::<ExactRational>().unwrap(), r);
        }
    }
}
