use num_complex::Complex64;
use oqgt_core::{kron, CMat};

/// Single-site Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The 2x2 matrix for this factor.
    pub fn matrix(self) -> CMat {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => CMat::from_row_slice(2, 2, &[one, zero, zero, one]),
            Pauli::X => CMat::from_row_slice(2, 2, &[zero, one, one, zero]),
            Pauli::Y => CMat::from_row_slice(2, 2, &[zero, -i, i, zero]),
            Pauli::Z => CMat::from_row_slice(2, 2, &[one, zero, zero, -one]),
        }
    }
}

/// One weighted tensor product of single-site Pauli factors.
///
/// Site 0 is the leftmost (most significant) factor in the dense Kronecker
/// product, so basis index `b` assigns site `l` the bit `(b >> (n-1-l)) & 1`,
/// with bit value 0 meaning spin up.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    /// Number of sites; always equals `factors.len()`.
    pub n_sites: usize,
    /// Per-site factors, site 0 first.
    pub factors: Vec<Pauli>,
    /// Real weight multiplying the product.
    pub coefficient: f64,
}

impl PauliString {
    /// Builds a string from its factors; `n_sites` is derived, never stated
    /// separately, so the length invariant holds by construction.
    pub fn new(factors: Vec<Pauli>, coefficient: f64) -> Self {
        Self {
            n_sites: factors.len(),
            factors,
            coefficient,
        }
    }

    /// A string that is identity everywhere except the listed sites.
    ///
    /// # Panics
    /// Panics if a site index is out of range; this is a programming error in
    /// the caller, not a data error.
    pub fn on_sites(n_sites: usize, sites: &[(usize, Pauli)], coefficient: f64) -> Self {
        let mut factors = vec![Pauli::I; n_sites];
        for &(site, p) in sites {
            assert!(site < n_sites, "site {site} out of range for {n_sites} sites");
            factors[site] = p;
        }
        Self::new(factors, coefficient)
    }

    /// Dense matrix via the iterated Kronecker product, coefficient included.
    pub fn dense(&self) -> CMat {
        let mut acc = CMat::from_element(1, 1, Complex64::new(self.coefficient, 0.0));
        for factor in &self.factors {
            acc = kron(&acc, &factor.matrix());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use oqgt_core::{hermiticity_defect, max_abs};

    #[test]
    fn single_site_factors_square_to_identity() {
        for p in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
            let m = p.matrix();
            let defect = max_abs(&(&m * &m - CMat::identity(2, 2)));
            assert!(defect == 0.0, "{p:?}^2 deviates from identity by {defect}");
        }
    }

    #[test]
    fn string_length_always_matches_site_count() {
        let s = PauliString::new(vec![Pauli::X, Pauli::I, Pauli::Z], -0.5);
        assert_eq!(s.n_sites, s.factors.len());
        let t = PauliString::on_sites(4, &[(1, Pauli::Y)], 2.0);
        assert_eq!(t.n_sites, 4);
        assert_eq!(t.factors, vec![Pauli::I, Pauli::Y, Pauli::I, Pauli::I]);
    }

    #[test]
    fn dense_two_site_string_matches_hand_kron() {
        // X on site 0, Z on site 1, weight -0.5. Site 0 is the leftmost
        // Kronecker factor, so the block structure is X outer, Z inner.
        let s = PauliString::on_sites(2, &[(0, Pauli::X), (1, Pauli::Z)], -0.5);
        let d = s.dense();
        assert_eq!(d.nrows(), 4);
        let expect = |r: usize, c: usize| -> f64 {
            match (r, c) {
                (0, 2) | (2, 0) => -0.5,
                (1, 3) | (3, 1) => 0.5,
                _ => 0.0,
            }
        };
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(d[(r, c)], Complex64::new(expect(r, c), 0.0), "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn dense_strings_are_hermitian_for_real_coefficients() {
        let s = PauliString::new(vec![Pauli::Y, Pauli::X, Pauli::Y], 1.25);
        assert_eq!(hermiticity_defect(&s.dense()), 0.0);
    }
}
