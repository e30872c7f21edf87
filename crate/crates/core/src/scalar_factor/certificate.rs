use std::fmt;

use crate::scalar::Scalar;

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// The four-factor rational identity evaluated at the target.
    FourFactorIdentity,
    /// The four-factor identity at `x y^4`, every factor divided by `y`.
    FourFactorShifted,
    /// `(-a, a/2, a/2, 2/a, -2/a, 1^n, (-1)^n)`.
    OddUniversal,
    /// `(-c, c-b, b/2, b/2, 2/b, -2/b, 1^n, (-1)^n)` with `b = (c^2 - a)/c`.
    EvenUniversal,
    /// Three factors in characteristic 3 via the quadratic `y x^2 + y^2 x + a = 0`.
    CharThreeQuadratic,
    /// Square roots in characteristic 2.
    CharTwoSquares,
    /// Odd factor counts with a free nonzero parameter `y`.
    ParametrizedOdd,
    /// `0 = (-1) * 1 * 0^(k-2)`.
    ZeroRule,
    ExhaustiveSearch,
    /// Eigenvalues of a commuting matrix factorization of a Jordan cell.
    JordanReduction,
}

impl Provenance {
    pub const ALL: [Provenance; 10] = [
        Provenance::FourFactorIdentity,
        Provenance::FourFactorShifted,
        Provenance::OddUniversal,
        Provenance::EvenUniversal,
        Provenance::CharThreeQuadratic,
        Provenance::CharTwoSquares,
        Provenance::ParametrizedOdd,
        Provenance::ZeroRule,
        Provenance::ExhaustiveSearch,
        Provenance::JordanReduction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::FourFactorIdentity => "four-factor-identity",
            Provenance::FourFactorShifted => "four-factor-shifted",
            Provenance::OddUniversal => "odd-universal",
            Provenance::EvenUniversal => "even-universal",
            Provenance::CharThreeQuadratic => "char3-quadratic",
            Provenance::CharTwoSquares => "char2-squares",
            Provenance::ParametrizedOdd => "parametrized-odd",
            Provenance::ZeroRule => "zero-rule",
            Provenance::ExhaustiveSearch => "exhaustive-search",
            Provenance::JordanReduction => "jordan-reduction",
        }
    }

    pub fn parse(s: &str) -> Option<Provenance> {
        Provenance::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a certificate failed verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rejection {
    LengthMismatch,
    ContextMismatch,
    ProductMismatch,
    SumMismatch,
    PowerDecomposition,
    NonCommutingPair,
    OutsideSubalgebra,
}

impl Rejection {
    pub fn reason(self) -> &'static str {
        match self {
            Rejection::LengthMismatch => "length mismatch",
            Rejection::ContextMismatch => "context mismatch",
            Rejection::ProductMismatch => "product mismatch",
            Rejection::SumMismatch => "sum mismatch",
            Rejection::PowerDecomposition => "power decomposition",
            Rejection::NonCommutingPair => "non-commuting pair",
            Rejection::OutsideSubalgebra => "factor outside subalgebra",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason())
    }
}

impl std::error::Error for Rejection {}

/// `target = factors[0] * ... * factors[k-1]` with the factors summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarCertificate<T> {
    pub target: T,
    pub k: usize,
    pub factors: Vec<T>,
    /// Claimed (and, on verification, checked) to have at least two distinct factors.
    pub nonpower: bool,
    pub provenance: Provenance,
}

pub fn is_power<T: PartialEq>(factors: &[T]) -> bool {
    factors.windows(2).all(|w| w[0] == w[1])
}

impl<T: Scalar> ScalarCertificate<T> {
    /// Builds and verifies; the non-power flag is set from the factors themselves.
    pub(crate) fn checked(
        target: T,
        factors: Vec<T>,
        provenance: Provenance,
    ) -> Result<Self, Rejection> {
        let cert = ScalarCertificate {
            nonpower: !is_power(&factors),
            k: factors.len(),
            target,
            factors,
            provenance,
        };
        cert.verify()?;
        Ok(cert)
    }

    pub fn verify(&self) -> Result<(), Rejection> {
        if self.factors.len() != self.k || self.k == 0 {
            return Err(Rejection::LengthMismatch);
        }
        if self.factors.iter().any(|f| !f.same_context(&self.target)) {
            return Err(Rejection::ContextMismatch);
        }
        let mut product = self.target.one_like();
        let mut sum = self.target.zero_like();
        for f in &self.factors {
            product = product * f.clone();
            sum = sum + f.clone();
        }
        if product != self.target {
            return Err(Rejection::ProductMismatch);
        }
        if !sum.is_zero() {
            return Err(Rejection::SumMismatch);
        }
        if self.nonpower && is_power(&self.factors) {
            return Err(Rejection::PowerDecomposition);
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// Multiplies every factor by `s`; used to move a certificate between targets `x` and `x s^k`.
    pub fn scaled(&self, s: &T) -> Option<Self> {
        let factors: Vec<T> = self.factors.iter().map(|f| f.clone() * s.clone()).collect();
        let target = self.target.clone() * s.pow_i(self.k as i64)?;
        ScalarCertificate::checked(target, factors, self.provenance).ok()
    }
}
