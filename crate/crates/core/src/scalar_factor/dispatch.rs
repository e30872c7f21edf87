use super::certificate::{Provenance, ScalarCertificate};
use super::char3::char3_three_factor;
use super::formulas::{char2_even_factor, even_k_factor, four_factor, odd_k_factor, zero_rule};
use super::oracle::oracle_search;
use super::FactorError;
use crate::budget::Budget;
use crate::fields::Gf;
use crate::Rational;

/// Balanced k-factorization of `a`, preferring closed forms and falling back to the oracle.
///
/// Order: zero rule, four-factor identity, characteristic-2 squares, odd and even universal
/// formulas, the characteristic-3 quadratic, exhaustive search. `NotFound { proven: true }`
/// means the oracle covered the whole space; `proven: false` means the budget ran out first.
pub fn balanced_factor(
    a: &Gf,
    k: usize,
    require_nonpower: bool,
    budget: &Budget,
) -> Result<ScalarCertificate<Gf>, FactorError> {
    if k < 2 {
        return Err(FactorError::InvalidFactorCount {
            k,
            reason: "at least two factors are required",
        });
    }
    let field = a.field();
    let p = field.characteristic();
    let q = field.order();

    let formula = if a.is_zero() && k >= 3 {
        Some(zero_rule(a, k))
    } else if k == 4 && p != 2 && p != 3 && q != 5 {
        Some(four_factor(a).map(|r| r.certificate))
    } else if p == 2 && q >= 4 && k >= 4 && k.is_multiple_of(2) {
        Some(char2_even_factor(a, k))
    } else if p != 2 && k >= 5 && k % 2 == 1 {
        Some(odd_k_factor(a, k))
    } else if p != 2 && k >= 6 && k.is_multiple_of(2) {
        Some(even_k_factor(a, k).map(|(c, _)| c))
    } else if p == 3 && q >= 9 && k == 3 {
        Some(char3_three_factor(a).map(|(c, _)| c))
    } else {
        None
    };

    match formula {
        Some(Ok(cert)) if cert.nonpower || !require_nonpower => {
            cert.verify()?;
            return Ok(cert);
        }
        Some(Err(FactorError::NoAdmissibleWitness(_))) | Some(Ok(_)) | None => {}
        Some(Err(e)) => return Err(e),
    }

    let factors = match oracle_search(a, k, require_nonpower, budget) {
        Ok(Some(f)) => f,
        Ok(None) => return Err(FactorError::NotFound { proven: true }),
        Err(FactorError::Budget(_)) => return Err(FactorError::NotFound { proven: false }),
        Err(e) => return Err(e),
    };
    let cert = ScalarCertificate::checked(a.clone(), factors, Provenance::ExhaustiveSearch)?;
    if require_nonpower && !cert.nonpower {
        return Err(FactorError::Verification(
            super::Rejection::PowerDecomposition,
        ));
    }
    Ok(cert)
}

/// Balanced k-factorization of a rational from the closed forms: the zero rule, the
/// four-factor identity, and the odd and even universal formulas. Other k are refused.
pub fn rational_factor(
    a: &Rational,
    k: usize,
    require_nonpower: bool,
) -> Result<ScalarCertificate<Rational>, FactorError> {
    let cert = if num_traits::Zero::is_zero(a) && k >= 3 {
        zero_rule(a, k)?
    } else if k == 4 {
        four_factor(a)?.certificate
    } else if k >= 5 && k % 2 == 1 {
        odd_k_factor(a, k)?
    } else if k >= 6 {
        even_k_factor(a, k)?.0
    } else {
        return Err(FactorError::Unsupported(format!(
            "no constructive method for {k} factors over the rationals"
        )));
    };
    if require_nonpower && !cert.nonpower {
        return Err(FactorError::Verification(
            super::Rejection::PowerDecomposition,
        ));
    }
    cert.verify()?;
    Ok(cert)
}
