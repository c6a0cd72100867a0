/// Resource caps shared by the solvers. Exceeding a cap is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Max points enumerated from a GAP, lattice box or tuple space.
    pub enum_cap: u128,
    /// Max size of an explicitly materialized sumset.
    pub set_cap: usize,
    /// Max entries in a dynamic-programming table layer.
    pub table_cap: usize,
    /// Largest modulus the Fourier step is allowed to use.
    pub max_modulus: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_cap: 1 << 24,
            set_cap: 1 << 22,
            table_cap: 1 << 22,
            max_modulus: 1 << 20,
        }
    }
}
