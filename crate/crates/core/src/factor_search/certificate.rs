use std::fmt;

use crate::matrix_ring::{in_generated_subalgebra, Matrix};
use crate::scalar_factor::Rejection;

/// How a matrix certificate was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMethod {
    /// Exhaustive search inside the algebra generated by the target.
    SubalgebraSearch,
    /// Exhaustive search over pairwise commuting tuples in the centralizer.
    CentralizerSearch,
    /// One pass over all (k-1)-prefixes, last factor forced.
    PairScan,
    MeetInTheMiddle,
    /// A certificate for `-A` with `k - 2` factors, extended by `E` and `-E`.
    SignExtension,
}

impl SearchMethod {
    pub const ALL: [SearchMethod; 5] = [
        SearchMethod::SubalgebraSearch,
        SearchMethod::CentralizerSearch,
        SearchMethod::PairScan,
        SearchMethod::MeetInTheMiddle,
        SearchMethod::SignExtension,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SearchMethod::SubalgebraSearch => "subalgebra-search",
            SearchMethod::CentralizerSearch => "centralizer-search",
            SearchMethod::PairScan => "pair-scan",
            SearchMethod::MeetInTheMiddle => "meet-in-the-middle",
            SearchMethod::SignExtension => "sign-extension",
        }
    }

    pub fn parse(s: &str) -> Option<SearchMethod> {
        SearchMethod::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

impl fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `target = factors[0] * ... * factors[k-1]` (left to right) with the factors summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCertificate {
    pub target: Matrix,
    pub k: usize,
    pub factors: Vec<Matrix>,
    /// Claims the factors commute pairwise.
    pub commuting: bool,
    /// Claims every factor is a polynomial in the target.
    pub in_subalgebra: bool,
    pub method: SearchMethod,
}

impl MatrixCertificate {
    pub(crate) fn checked(
        target: Matrix,
        factors: Vec<Matrix>,
        commuting: bool,
        in_subalgebra: bool,
        method: SearchMethod,
    ) -> Result<Self, Rejection> {
        let cert = MatrixCertificate {
            k: factors.len(),
            target,
            factors,
            commuting,
            in_subalgebra,
            method,
        };
        cert.verify()?;
        Ok(cert)
    }

    /// Recomputes product, sum and every claimed flag.
    pub fn verify(&self) -> Result<(), Rejection> {
        if self.k < 2 || self.factors.len() != self.k {
            return Err(Rejection::LengthMismatch);
        }
        let field = self.target.field();
        let n = self.target.n();
        if self
            .factors
            .iter()
            .any(|x| !x.field().same_field(field) || x.n() != n)
        {
            return Err(Rejection::ContextMismatch);
        }
        let mut sum = Matrix::zero(field, n).expect("target shape is valid");
        let mut product = Matrix::identity(field, n).expect("target shape is valid");
        for x in &self.factors {
            sum = sum.add(x).expect("checked shapes");
            product = product.mul(x).expect("checked shapes");
        }
        if product != self.target {
            return Err(Rejection::ProductMismatch);
        }
        if !sum.is_zero() {
            return Err(Rejection::SumMismatch);
        }
        if self.commuting {
            for (i, x) in self.factors.iter().enumerate() {
                for y in &self.factors[i + 1..] {
                    if !x.commutes(y).expect("checked shapes") {
                        return Err(Rejection::NonCommutingPair);
                    }
                }
            }
        }
        if self.in_subalgebra
            && !self
                .factors
                .iter()
                .all(|x| in_generated_subalgebra(&self.target, x))
        {
            return Err(Rejection::OutsideSubalgebra);
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// The certificate for `-A` obtained by appending `E` and `-E`.
    pub fn sign_extended(&self) -> MatrixCertificate {
        let field = self.target.field();
        let e = Matrix::identity(field, self.target.n()).expect("target shape is valid");
        let mut factors = self.factors.clone();
        factors.push(e.neg());
        factors.push(e);
        MatrixCertificate {
            target: self.target.neg(),
            k: self.k + 2,
            factors,
            // E and -E commute with everything and are polynomials in any matrix
            commuting: self.commuting,
            in_subalgebra: self.in_subalgebra,
            method: SearchMethod::SignExtension,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::GaloisField;

    fn m(f: &GaloisField, s: &str) -> Matrix {
        Matrix::parse(f, s).unwrap()
    }

    #[test]
    fn rejections() {
        let f = GaloisField::prime(5).unwrap();
        let e = m(&f, "1,0;0,1");
        // 1 = 3 * 3 * 4 in GF(5) with 3 + 3 + 4 = 0
        let scal = |c: i64| Matrix::scalar(&f.from_integer(c), 2).unwrap();
        let good = MatrixCertificate::checked(
            e.clone(),
            vec![scal(3), scal(3), scal(4)],
            true,
            true,
            SearchMethod::SubalgebraSearch,
        )
        .unwrap();
        assert!(good.is_valid());
        let ext = good.sign_extended();
        assert_eq!(ext.target, e.neg());
        assert!(ext.is_valid());

        let mut bad = good.clone();
        bad.factors[2] = scal(1);
        assert!(matches!(
            bad.verify(),
            Err(Rejection::ProductMismatch | Rejection::SumMismatch)
        ));

        // sum 0, product E, but the first two do not commute
        let x = m(&f, "0,1;1,0");
        let y = m(&f, "1,1;0,1");
        let xy = x.mul(&y).unwrap();
        let z = x.add(&y).unwrap().neg();
        let target = xy.mul(&z).unwrap();
        let cert = MatrixCertificate {
            target,
            k: 3,
            factors: vec![x, y, z],
            commuting: true,
            in_subalgebra: false,
            method: SearchMethod::PairScan,
        };
        assert_eq!(cert.verify(), Err(Rejection::NonCommutingPair));
        let relaxed = MatrixCertificate {
            commuting: false,
            ..cert
        };
        assert!(relaxed.is_valid());

        let j = Matrix::jordan_cell(&f.one(), 2).unwrap();
        let mut outside = good.clone();
        outside.target = j;
        assert_eq!(outside.verify(), Err(Rejection::ProductMismatch));
        let mut short = good;
        short.k = 4;
        assert_eq!(short.verify(), Err(Rejection::LengthMismatch));
    }
}
