//! Words over the alphabet `{a, b}` and the Fibonacci / Thue-Morse families.
//!
//! Positions exposed by this module are 1-based, matching the way occurrences
//! are reported everywhere else in the crate.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    fn as_byte(self) -> u8 {
        self.as_char() as u8
    }

    fn from_byte(b: u8) -> Option<Letter> {
        match b {
            b'a' => Some(Letter::A),
            b'b' => Some(Letter::B),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_char(self.as_char())
    }
}

/// A finite word over `{a, b}`, stored as ASCII bytes.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    bytes: Vec<u8>,
}

impl Word {
    pub fn new() -> Word {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        Word {
            bytes: letters.into_iter().map(Letter::as_byte).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    /// The raw ASCII bytes; every byte is `b'a'` or `b'b'`.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Letter at 1-based position `pos`.
    pub fn letter(&self, pos: usize) -> Option<Letter> {
        if pos == 0 {
            return None;
        }
        self.bytes.get(pos - 1).and_then(|&b| Letter::from_byte(b))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.bytes.iter().map(|&b| Letter::from_byte(b).expect("word invariant"))
    }

    /// `self[start..=end]` with 1-based inclusive bounds.
    pub fn substring(&self, start: usize, end: usize) -> Result<Word> {
        if start == 0 || start > end || end > self.len() {
            return Err(Error::OutOfBounds {
                start,
                end,
                len: self.len(),
            });
        }
        Ok(Word {
            bytes: self.bytes[start - 1..end].to_vec(),
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bytes = Vec::with_capacity(self.len() + other.len());
        bytes.extend_from_slice(&self.bytes);
        bytes.extend_from_slice(&other.bytes);
        Word { bytes }
    }

    pub fn push_word(&mut self, other: &Word) {
        self.bytes.extend_from_slice(&other.bytes);
    }

    pub fn flip(&self) -> Word {
        Word {
            bytes: self
                .bytes
                .iter()
                .map(|&b| if b == b'a' { b'b' } else { b'a' })
                .collect(),
        }
    }

    pub fn contains_str(&self, needle: &str) -> bool {
        let needle = needle.as_bytes();
        needle.is_empty() || self.bytes.windows(needle.len()).any(|w| w == needle)
    }

    /// Reads a word file: one line of `a`/`b`, optionally followed by a single newline.
    pub fn read_file(path: impl AsRef<Path>) -> Result<Word> {
        let path = path.as_ref();
        let raw = std::fs::read(path)
            .map_err(|e| Error::InvalidWord(format!("{}: {e}", path.display())))?;
        let body = raw.strip_suffix(b"\n").unwrap_or(&raw);
        Word::from_ascii(body)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut out = self.bytes.clone();
        out.push(b'\n');
        std::fs::write(path, out)
    }

    fn from_ascii(bytes: &[u8]) -> Result<Word> {
        if let Some(pos) = bytes.iter().position(|&b| b != b'a' && b != b'b') {
            return Err(Error::InvalidWord(format!(
                "byte {:#04x} at offset {pos} is not 'a' or 'b'",
                bytes[pos]
            )));
        }
        Ok(Word {
            bytes: bytes.to_vec(),
        })
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::from_ascii(s.as_bytes())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // bytes are always ASCII
        f.write_str(std::str::from_utf8(&self.bytes).expect("ascii"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn fib_length(order: usize) -> Result<u64> {
    if !(1..=93).contains(&order) {
        return Err(domain("order", order, "1 <= order <= 93"));
    }
    Ok(fib_number(order as i64))
}

/// `f_k` extended with `f_0 = 0` and `f_{-1} = 1`.
pub fn fib_number(k: i64) -> u64 {
    match k {
        i64::MIN..=-2 => panic!("fib_number is only defined for k >= -1"),
        -1 => 1,
        0 => 0,
        _ => {
            let (mut prev, mut cur) = (0u64, 1u64);
            for _ in 1..k {
                (prev, cur) = (cur, prev + cur);
            }
            cur
        }
    }
}

pub fn fib_word(order: usize) -> Result<Word> {
    if order < 1 {
        return Err(domain("order", order, "order >= 1"));
    }
    let mut prev = b"b".to_vec(); // F_1
    let mut cur = b"a".to_vec(); // F_2
    if order == 1 {
        return Ok(Word { bytes: prev });
    }
    for _ in 2..order {
        let mut next = cur.clone();
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(Word { bytes: cur })
}

pub fn tm_length(order: usize) -> Result<u64> {
    if order < 1 || order > 64 {
        return Err(domain("order", order, "1 <= order <= 64"));
    }
    Ok(1u64 << (order - 1))
}

pub fn tm_word(order: usize) -> Result<Word> {
    if order < 1 {
        return Err(domain("order", order, "order >= 1"));
    }
    let mut w = Word {
        bytes: vec![b'a'],
    };
    for _ in 1..order {
        let flipped = w.flip();
        w.push_word(&flipped);
    }
    Ok(w)
}

pub fn flip_word(w: &Word) -> Word {
    w.flip()
}

/// `F_{i-5} F_{i-6} ... F_3 F_2`.
pub fn q_word(order: usize) -> Result<Word> {
    if order < 7 {
        return Err(domain("order", order, "order >= 7"));
    }
    let mut q = Word::new();
    for k in (2..=order - 5).rev() {
        q.push_word(&fib_word(k)?);
    }
    Ok(q)
}

/// `Δ(0) = ba`, `Δ(1) = ab`.
pub fn delta(bit: u8) -> Result<Word> {
    match bit {
        0 => Ok("ba".parse()?),
        1 => Ok("ab".parse()?),
        _ => Err(domain("bit", bit, "bit in {0, 1}")),
    }
}

/// Symbolic handle for a factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactorRef {
    Fib(usize),
    Tm(usize),
    TmFlip(usize),
    Literal(Word),
}

impl FactorRef {
    pub fn resolve(&self) -> Result<Word> {
        match self {
            FactorRef::Fib(k) => fib_word(*k),
            FactorRef::Tm(k) => tm_word(*k),
            FactorRef::TmFlip(k) => Ok(tm_word(*k)?.flip()),
            FactorRef::Literal(w) => Ok(w.clone()),
        }
    }

    /// Length without materializing the word.
    pub fn len(&self) -> Result<usize> {
        Ok(match self {
            FactorRef::Fib(k) => fib_length(*k)? as usize,
            FactorRef::Tm(k) | FactorRef::TmFlip(k) => tm_length(*k)? as usize,
            FactorRef::Literal(w) => w.len(),
        })
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            FactorRef::Fib(k) | FactorRef::Tm(k) | FactorRef::TmFlip(k) => Some(*k),
            FactorRef::Literal(_) => None,
        }
    }
}

impl fmt::Display for FactorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorRef::Fib(k) => write!(f, "F_{k}"),
            FactorRef::Tm(k) => write!(f, "T_{k}"),
            FactorRef::TmFlip(k) => write!(f, "flip(T_{k})"),
            FactorRef::Literal(w) => write!(f, "\"{w}\""),
        }
    }
}

#[derive(Serialize)]
struct FactorDescriptor<'a> {
    kind: &'static str,
    order: Option<usize>,
    text: Option<&'a Word>,
}

impl Serialize for FactorRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, text) = match self {
            FactorRef::Fib(_) => ("Fib", None),
            FactorRef::Tm(_) => ("TM", None),
            FactorRef::TmFlip(_) => ("TMflip", None),
            FactorRef::Literal(w) => ("lit", Some(w)),
        };
        FactorDescriptor {
            kind,
            order: self.order(),
            text,
        }
        .serialize(serializer)
    }
}

/// An ordered sequence of factors together with the word it is claimed to spell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<FactorRef>,
    target: Word,
}

impl Factorization {
    /// Checks that every factor is nonempty and the factors concatenate to `target`.
    pub fn new(factors: Vec<FactorRef>, target: Word) -> Result<Factorization> {
        let fac = Factorization { factors, target };
        let mut cache: HashMap<&FactorRef, Word> = HashMap::new();
        let mut spelled = Word::new();
        for f in &fac.factors {
            if !cache.contains_key(f) {
                cache.insert(f, f.resolve()?);
            }
            let w = &cache[f];
            if w.is_empty() {
                return Err(Error::NotAFactorization);
            }
            spelled.push_word(w);
        }
        if fac.factors.is_empty() || spelled != fac.target {
            return Err(Error::NotAFactorization);
        }
        Ok(fac)
    }

    pub fn factors(&self) -> &[FactorRef] {
        &self.factors
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn size(&self) -> usize {
        self.factors.len()
    }

    /// Concatenation of the resolved factors.
    pub fn flatten(&self) -> Result<Word> {
        flatten_factors(&self.factors)
    }

    /// 1-based starting position of each factor.
    pub fn starts(&self) -> Result<Vec<usize>> {
        factor_starts(&self.factors)
    }
}

pub(crate) fn flatten_factors(factors: &[FactorRef]) -> Result<Word> {
    let mut cache: HashMap<&FactorRef, Word> = HashMap::new();
    let mut out = Word::new();
    for f in factors {
        if !cache.contains_key(f) {
            cache.insert(f, f.resolve()?);
        }
        out.push_word(&cache[f]);
    }
    Ok(out)
}

pub(crate) fn factor_starts(factors: &[FactorRef]) -> Result<Vec<usize>> {
    let mut pos = 1;
    let mut starts = Vec::with_capacity(factors.len());
    for f in factors {
        starts.push(pos);
        pos += f.len()?;
    }
    Ok(starts)
}

/// Factorization of `F_i` into copies of `F_k` and `F_{k+1}`, obtained by
/// unfolding `F_m = F_{m-1} F_{m-2}` on the leftmost factor of order above `k + 1`.
pub fn fib_uniform_factorization(i: usize, k: usize) -> Result<Factorization> {
    if i < 1 {
        return Err(domain("i", i, "i >= 1"));
    }
    if k < 1 || k > i {
        return Err(domain("k", k, format!("1 <= k <= {i}")));
    }
    let mut orders = vec![i];
    while let Some(pos) = orders.iter().position(|&m| m > k + 1) {
        let m = orders[pos];
        orders.splice(pos..=pos, [m - 1, m - 2]);
    }
    Factorization::new(orders.into_iter().map(FactorRef::Fib).collect(), fib_word(i)?)
}

/// Factorization of `T_i` into copies of `T_{i-(j-1)}` and its flip, obtained by
/// unfolding the leftmost factor of larger order.
pub fn tm_uniform_factorization(i: usize, j: usize) -> Result<Factorization> {
    if i < 2 {
        return Err(domain("i", i, "i >= 2"));
    }
    if j < 1 || j > i {
        return Err(domain("j", j, format!("1 <= j <= {i}")));
    }
    let level = i - (j - 1);
    let mut factors = vec![FactorRef::Tm(i)];
    while let Some(pos) = factors
        .iter()
        .position(|f| f.order().is_some_and(|m| m > level))
    {
        let replacement = match factors[pos] {
            FactorRef::Tm(m) => [FactorRef::Tm(m - 1), FactorRef::TmFlip(m - 1)],
            FactorRef::TmFlip(m) => [FactorRef::TmFlip(m - 1), FactorRef::Tm(m - 1)],
            _ => unreachable!("only TM factors are produced"),
        };
        factors.splice(pos..=pos, replacement);
    }
    Factorization::new(factors, tm_word(i)?)
}
