//! Syndrome lookup tables.
//!
//! A table is a list of segments. Each segment owns a contiguous range of
//! syndrome bits and maps every value of that sub-syndrome to a Pauli whose
//! full syndrome is exactly that sub-syndrome (zero elsewhere). Lookup
//! multiplies the per-segment corrections, so CSS codes decode their X and Z
//! halves independently and every syndrome has an entry.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::error::{QeccError, Result};
use crate::pauli::{PauliString, Syndrome};

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub bits: Range<usize>,
    /// Indexed by sub-syndrome value (first bit most significant).
    pub entries: Vec<PauliString>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionTable {
    n: usize,
    len: usize,
    segments: Vec<Segment>,
    overrides: BTreeMap<Syndrome, PauliString>,
}

impl CorrectionTable {
    /// Builds a table from `(bit range, candidate corrections)` pairs. Within a
    /// segment the first candidate with a given sub-syndrome wins; every value
    /// must be covered.
    pub fn from_candidates(
        n: usize,
        generators: &[PauliString],
        segments: &[(Range<usize>, Vec<PauliString>)],
    ) -> Result<Self> {
        let len = generators.len();
        let mut built = Vec::new();
        for (bits, candidates) in segments {
            let width = bits.len();
            let mut entries: Vec<Option<PauliString>> = vec![None; 1 << width];
            entries[0] = Some(PauliString::identity(n));
            for cand in candidates {
                let s = cand.syndrome(generators)?;
                let outside = s
                    .bits()
                    .iter()
                    .enumerate()
                    .any(|(k, &b)| b == 1 && !bits.contains(&k));
                if outside {
                    return Err(QeccError::InvalidSyndrome {
                        syndrome: s.to_string(),
                        reason: format!("correction {cand} leaves segment {bits:?}"),
                    });
                }
                let v = s.slice(bits.clone()).value();
                if entries[v].is_none() {
                    entries[v] = Some(*cand);
                }
            }
            let entries = entries
                .into_iter()
                .enumerate()
                .map(|(v, e)| {
                    e.ok_or_else(|| QeccError::InvalidSyndrome {
                        syndrome: Syndrome::from_value(v, width).to_string(),
                        reason: format!("no correction for segment {bits:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            built.push(Segment {
                bits: bits.clone(),
                entries,
            });
        }
        let mut covered = vec![false; len];
        for seg in &built {
            for k in seg.bits.clone() {
                if k >= len || covered[k] {
                    return Err(QeccError::InvalidSyndrome {
                        syndrome: format!("{:?}", seg.bits),
                        reason: "segments must partition the syndrome bits".into(),
                    });
                }
                covered[k] = true;
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(QeccError::InvalidSyndrome {
                syndrome: format!("{covered:?}"),
                reason: "segments must partition the syndrome bits".into(),
            });
        }
        Ok(Self {
            n,
            len,
            segments: built,
            overrides: BTreeMap::new(),
        })
    }

    pub fn syndrome_len(&self) -> usize {
        self.len
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn lookup(&self, syndrome: &Syndrome) -> Result<PauliString> {
        if syndrome.len() != self.len {
            return Err(QeccError::InvalidSyndrome {
                syndrome: syndrome.to_string(),
                reason: format!("expected {} bits", self.len),
            });
        }
        if let Some(p) = self.overrides.get(syndrome) {
            return Ok(*p);
        }
        self.segments
            .iter()
            .try_fold(PauliString::identity(self.n), |acc, seg| {
                let v = syndrome.slice(seg.bits.clone()).value();
                acc.mul(&seg.entries[v])
            })
    }

    /// Replaces the entry for one syndrome. Used to exercise the verifier.
    pub fn with_override(&self, syndrome: Syndrome, correction: PauliString) -> Self {
        let mut out = self.clone();
        out.overrides.insert(syndrome, correction);
        out
    }

    /// Every syndrome with its correction, in ascending syndrome order.
    pub fn entries(&self) -> Result<Vec<(Syndrome, PauliString)>> {
        (0..1usize << self.len)
            .map(|v| {
                let s = Syndrome::from_value(v, self.len);
                let p = self.lookup(&s)?;
                Ok((s, p))
            })
            .collect()
    }
}
