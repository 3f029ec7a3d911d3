use std::fmt;

use crate::error::{Error, Result};
use crate::foldcore::{is_valid_code, FoldCode};

/// Index of a product symbol in a [`TrackAlphabet`].
pub type Letter = u32;

/// The symbol set of one input track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Track {
    /// Unfolding instructions `{-1, 0, 1}`.
    Instruction,
    /// One base-2 digit `{0, 1}`.
    Binary,
}

impl Track {
    pub fn symbols(self) -> &'static [i8] {
        match self {
            Track::Instruction => &[-1, 0, 1],
            Track::Binary => &[0, 1],
        }
    }

    pub fn radix(self) -> usize {
        self.symbols().len()
    }

    fn index_of(self, symbol: i8) -> Option<usize> {
        self.symbols().iter().position(|&s| s == symbol)
    }
}

/// Inputs read in parallel, one symbol per track and step, lsd-first.
///
/// Letters are mixed-radix indices with track 0 least significant.
/// Only track 0 may be an instruction track.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrackAlphabet {
    tracks: Vec<Track>,
}

/// Inputs recovered from a product word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    /// Raw instruction track, when present; may be an invalid code.
    pub code: Option<Vec<i8>>,
    pub nums: Vec<u64>,
}

impl Decoded {
    /// The instruction track as a code, or `None` if absent or invalid.
    pub fn fold_code(&self) -> Option<FoldCode> {
        self.code
            .as_ref()
            .and_then(|raw| FoldCode::from_symbols(raw).ok())
    }
}

impl TrackAlphabet {
    pub fn new(tracks: Vec<Track>) -> Result<Self> {
        if tracks.is_empty() {
            return Err(Error::Rejected("an alphabet needs at least one track".into()));
        }
        if tracks[1..].contains(&Track::Instruction) {
            return Err(Error::Rejected(
                "only track 0 may carry unfolding instructions".into(),
            ));
        }
        Ok(TrackAlphabet { tracks })
    }

    /// An instruction track followed by `numeric` binary tracks.
    pub fn with_code(numeric: usize) -> Self {
        let mut tracks = vec![Track::Instruction];
        tracks.extend(std::iter::repeat_n(Track::Binary, numeric));
        TrackAlphabet { tracks }
    }

    /// `numeric` binary tracks.
    pub fn numeric(numeric: usize) -> Self {
        assert!(numeric > 0);
        TrackAlphabet {
            tracks: vec![Track::Binary; numeric],
        }
    }

    pub fn tracks(&self) -> &[Track] {
        &self.tracks
    }

    pub fn arity(&self) -> usize {
        self.tracks.len()
    }

    pub fn has_code(&self) -> bool {
        self.tracks[0] == Track::Instruction
    }

    /// Number of binary tracks.
    pub fn numeric_arity(&self) -> usize {
        self.tracks.len() - usize::from(self.has_code())
    }

    /// Number of product letters.
    pub fn size(&self) -> usize {
        self.tracks.iter().map(|t| t.radix()).product()
    }

    /// The letter with every component zero (the padding letter).
    pub fn zero(&self) -> Letter {
        self.letter(&vec![0; self.arity()]).expect("zero is in every track")
    }

    /// Letter for per-track symbols.
    pub fn letter(&self, components: &[i8]) -> Option<Letter> {
        if components.len() != self.arity() {
            return None;
        }
        let mut letter = 0usize;
        let mut scale = 1usize;
        for (track, &c) in self.tracks.iter().zip(components) {
            letter += track.index_of(c)? * scale;
            scale *= track.radix();
        }
        Some(letter as Letter)
    }

    /// Per-track symbols of a letter.
    pub fn components(&self, letter: Letter) -> Vec<i8> {
        let mut rest = letter as usize;
        self.tracks
            .iter()
            .map(|track| {
                let c = track.symbols()[rest % track.radix()];
                rest /= track.radix();
                c
            })
            .collect()
    }

    /// Encodes a code and numbers as a product word of length `width`.
    ///
    /// Track 0 carries the code padded with zeros; each binary track carries
    /// the lsd-first digits of one number.
    pub fn encode(&self, code: Option<&FoldCode>, nums: &[u64], width: usize) -> Result<Vec<Letter>> {
        if code.is_some() != self.has_code() {
            return Err(Error::Rejected(
                "instruction track presence does not match the alphabet".into(),
            ));
        }
        if nums.len() != self.numeric_arity() {
            return Err(Error::Rejected(format!(
                "expected {} numbers, got {}",
                self.numeric_arity(),
                nums.len()
            )));
        }
        if let Some(f) = code {
            if f.effective_len() > width {
                return Err(Error::Rejected(format!(
                    "width {width} is smaller than the code length {}",
                    f.effective_len()
                )));
            }
        }
        for &x in nums {
            let bits = 64 - x.leading_zeros() as usize;
            if bits > width {
                return Err(Error::Rejected(format!(
                    "width {width} is too small for {x} ({bits} bits)"
                )));
            }
        }
        let raw = code.map(|f| f.raw());
        let mut word = Vec::with_capacity(width);
        let mut comps = vec![0i8; self.arity()];
        for i in 0..width {
            let mut k = 0;
            if let Some(raw) = &raw {
                comps[0] = raw.get(i).copied().unwrap_or(0);
                k = 1;
            }
            for (j, &x) in nums.iter().enumerate() {
                comps[k + j] = if i < 64 { ((x >> i) & 1) as i8 } else { 0 };
            }
            word.push(self.letter(&comps).expect("components are in range"));
        }
        Ok(word)
    }

    /// Inverse of [`TrackAlphabet::encode`]; trailing padding is kept on the code.
    pub fn decode(&self, word: &[Letter]) -> Decoded {
        let mut code = self.has_code().then(Vec::new);
        let mut nums = vec![0u64; self.numeric_arity()];
        let off = usize::from(self.has_code());
        for (i, &letter) in word.iter().enumerate() {
            let comps = self.components(letter);
            if let Some(code) = code.as_mut() {
                code.push(comps[0]);
            }
            for (j, n) in nums.iter_mut().enumerate() {
                if comps[off + j] == 1 && i < 64 {
                    *n |= 1 << i;
                }
            }
        }
        Decoded { code, nums }
    }

    /// True iff the instruction track of `word` (if any) is a valid code.
    pub fn well_formed(&self, word: &[Letter]) -> bool {
        if !self.has_code() {
            return true;
        }
        let raw: Vec<i8> = word.iter().map(|&l| self.components(l)[0]).collect();
        is_valid_code(&raw)
    }

    /// A letter rendered as `s1;s2;...;sk`.
    pub fn letter_string(&self, letter: Letter) -> String {
        self.components(letter)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Inverse of [`TrackAlphabet::letter_string`].
    pub fn parse_letter(&self, s: &str) -> Option<Letter> {
        let comps: Option<Vec<i8>> = s.split(';').map(|p| p.trim().parse().ok()).collect();
        self.letter(&comps?)
    }
}

impl fmt::Display for TrackAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tracks
            .iter()
            .map(|t| {
                let syms: Vec<String> = t.symbols().iter().map(|s| s.to_string()).collect();
                format!("{{{}}}", syms.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Encodes `(f, nums)` over an instruction track and `nums.len()` binary tracks.
pub fn encode_inputs(code: &FoldCode, nums: &[u64], width: usize) -> Result<Vec<Letter>> {
    TrackAlphabet::with_code(nums.len()).encode(Some(code), nums, width)
}
