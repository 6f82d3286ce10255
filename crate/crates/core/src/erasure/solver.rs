//! Fast covered-subcode queries through the parity-check matrix.
//!
//! With H the parity-check matrix of C and E the erased set, S_C(x) is the
//! set of vectors supported on E in ker H, so
//! `dim S_C(x) = |E| - rank(H_E)` where H_E keeps the columns in E. Columns
//! are inserted one at a time into an XOR basis keyed by lowest set bit; a
//! column that reduces to zero witnesses one kernel vector. Tracking which
//! columns were combined (the "tag") recovers the kernel's support.

use crate::codes::LinearCode;
use crate::gf2::{or_into, words_for, xor_into};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct ErasureSolver {
    len: usize,
    dim: usize,
    checks: usize,
    words: usize,
    columns: Vec<u64>,
}

/// Per-thread scratch space for [`ErasureSolver`].
#[derive(Debug, Clone)]
pub struct Workspace {
    basis: Vec<u64>,
    tags: Vec<u64>,
    tag_stride: usize,
    pivot_slot: Vec<u32>,
    pivots: Vec<usize>,
    vec: Vec<u64>,
    tag: Vec<u64>,
    acc: Vec<u64>,
    rank: usize,
}

impl ErasureSolver {
    pub fn new(code: &LinearCode) -> Self {
        let columns = code.parity_check().transpose();
        let words = columns.stride();
        let mut data = Vec::with_capacity(code.len() * words);
        for row in columns.row_iter() {
            data.extend_from_slice(row);
        }
        ErasureSolver {
            len: code.len(),
            dim: code.dim(),
            checks: code.len() - code.dim(),
            words,
            columns: data,
        }
    }

    /// Block length N.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Code dimension k.
    pub fn code_dim(&self) -> usize {
        self.dim
    }

    pub fn workspace(&self) -> Workspace {
        let tag_stride = words_for(self.len);
        Workspace {
            basis: vec![0; self.checks * self.words],
            tags: vec![0; self.checks * tag_stride],
            tag_stride,
            pivot_slot: vec![NONE; self.checks],
            pivots: Vec::with_capacity(self.checks),
            vec: vec![0; self.words],
            tag: vec![0; tag_stride],
            acc: vec![0; tag_stride],
            rank: 0,
        }
    }

    #[inline]
    fn column(&self, j: usize) -> &[u64] {
        &self.columns[j * self.words..(j + 1) * self.words]
    }

    fn reset(ws: &mut Workspace) {
        for &b in &ws.pivots {
            ws.pivot_slot[b] = NONE;
        }
        ws.pivots.clear();
        ws.rank = 0;
    }

    /// Reduces column `j` against the basis. Returns true when it is
    /// dependent; otherwise it joins the basis. With `tag_pos`, the tag of
    /// the reduced vector is left in `ws.tag[..tag_words]`.
    #[inline]
    fn insert(
        &self,
        ws: &mut Workspace,
        j: usize,
        tag_pos: Option<usize>,
        tag_words: usize,
    ) -> bool {
        let w = self.words;
        let ts = ws.tag_stride;
        let Workspace {
            basis,
            tags,
            pivot_slot,
            pivots,
            vec,
            tag,
            rank,
            ..
        } = ws;
        vec.copy_from_slice(self.column(j));
        if let Some(pos) = tag_pos {
            tag[..tag_words].fill(0);
            tag[pos / 64] |= 1 << (pos % 64);
        }
        for wi in 0..w {
            while vec[wi] != 0 {
                let b = wi * 64 + vec[wi].trailing_zeros() as usize;
                let slot = pivot_slot[b];
                if slot == NONE {
                    let s = *rank;
                    basis[s * w..(s + 1) * w].copy_from_slice(vec);
                    if tag_pos.is_some() {
                        tags[s * ts..s * ts + tag_words].copy_from_slice(&tag[..tag_words]);
                    }
                    pivot_slot[b] = s as u32;
                    pivots.push(b);
                    *rank += 1;
                    return false;
                }
                let s = slot as usize;
                xor_into(&mut vec[wi..], &basis[s * w + wi..(s + 1) * w]);
                if tag_pos.is_some() {
                    xor_into(&mut tag[..tag_words], &tags[s * ts..s * ts + tag_words]);
                }
            }
        }
        true
    }

    /// dim S_C(x) for the erased coordinates `erased`.
    pub fn dim(&self, erased: &[usize], ws: &mut Workspace) -> usize {
        Self::reset(ws);
        let mut dependent = 0;
        for (idx, &j) in erased.iter().enumerate() {
            if ws.rank == self.checks {
                dependent += erased.len() - idx;
                break;
            }
            if self.insert(ws, j, None, 0) {
                dependent += 1;
            }
        }
        dependent
    }

    /// Whether dim S_C(x) >= r, stopping as soon as the answer is known.
    pub fn dim_at_least(&self, erased: &[usize], r: usize, ws: &mut Workspace) -> bool {
        if r == 0 {
            return true;
        }
        if erased.len() < r {
            return false;
        }
        Self::reset(ws);
        let mut dependent = 0;
        for (idx, &j) in erased.iter().enumerate() {
            let remaining = erased.len() - idx;
            if ws.rank == self.checks {
                return dependent + remaining >= r;
            }
            if dependent + remaining < r {
                return false;
            }
            if self.insert(ws, j, None, 0) {
                dependent += 1;
                if dependent >= r {
                    return true;
                }
            }
        }
        false
    }

    /// Computes supp(S_C(x)) into `support` (increasing) and returns dim S_C(x).
    pub fn support(&self, erased: &[usize], ws: &mut Workspace, support: &mut Vec<usize>) -> usize {
        Self::reset(ws);
        support.clear();
        let tw = words_for(erased.len());
        ws.acc[..tw].fill(0);
        let mut dependent = 0;
        for (pos, &j) in erased.iter().enumerate() {
            if self.insert(ws, j, Some(pos), tw) {
                dependent += 1;
                or_into(&mut ws.acc[..tw], &ws.tag[..tw]);
            }
        }
        support.extend(crate::gf2::iter_ones(&ws.acc[..tw]).map(|pos| erased[pos]));
        dependent
    }

    /// Whether coordinate `i` lies in supp(S_C(x)); `erased` must be sorted.
    pub fn bit_in_support(&self, erased: &[usize], i: usize, ws: &mut Workspace) -> bool {
        if erased.binary_search(&i).is_err() {
            return false;
        }
        Self::reset(ws);
        for &j in erased {
            if ws.rank == self.checks {
                return true;
            }
            if j != i {
                self.insert(ws, j, None, 0);
            }
        }
        self.insert(ws, i, None, 0)
    }
}
