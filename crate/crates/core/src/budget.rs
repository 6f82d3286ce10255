use num_bigint::BigUint;

/// Limits that keep exhaustive oracles from running away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budgets {
    /// Largest block length N for which all 2^N erasure patterns are scanned.
    pub exhaustive_bits: usize,
    /// Largest number of subspaces the d_r oracle may visit.
    pub subspaces: BigUint,
    /// Largest code dimension k for codeword enumeration (2^k codewords).
    pub codeword_bits: usize,
    /// Largest generator matrix, in bits, that a constructor will allocate.
    pub matrix_bits: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            exhaustive_bits: 24,
            subspaces: BigUint::from(100_000_000u64),
            codeword_bits: 22,
            matrix_bits: 1 << 32,
        }
    }
}
