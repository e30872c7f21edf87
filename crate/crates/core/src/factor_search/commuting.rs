use super::certificate::{MatrixCertificate, SearchMethod};
use super::SearchError;
use crate::budget::{Budget, BudgetExceeded, StepCounter};
use crate::fields::{GaloisField, Gf};
use crate::matrix_ring::{centralizer, subalgebra_of, DenseRing, Matrix, Packed, RingEngine};
use crate::scalar_factor::{
    decide_nonpower, FactorError, Provenance, Rejection, ScalarCertificate,
};

/// Every n x n matrix over GF(q), n >= 2, is a product of `k` pairwise commuting matrices
/// summing to zero. Same condition as non-power balanced factorizations in GF(q).
pub fn decide_matrix(q: u64, k: usize) -> Result<bool, SearchError> {
    Ok(decide_nonpower(q, k)?)
}

fn check_k(k: usize) -> Result<(), SearchError> {
    if k < 2 {
        return Err(FactorError::InvalidFactorCount {
            k,
            reason: "at least two factors are required",
        }
        .into());
    }
    Ok(())
}

/// Depth-first over (k-1)-prefixes, last factor forced to minus the prefix sum. With
/// `pairwise`, each level only offers candidates commuting with every earlier factor.
struct Dfs<'a> {
    ring: &'a DenseRing,
    target: Packed,
    k: usize,
    pairwise: bool,
    counter: StepCounter,
}

impl Dfs<'_> {
    fn run(
        &mut self,
        tuple: &mut Vec<Packed>,
        candidates: &[Packed],
        sum: Packed,
        prod: Packed,
    ) -> Result<bool, BudgetExceeded> {
        if tuple.len() == self.k - 1 {
            self.counter.step()?;
            let last = self.ring.neg(sum);
            if self.ring.mul(prod, last) == self.target {
                tuple.push(last);
                return Ok(true);
            }
            return Ok(false);
        }
        // a zero partial product stays zero
        if prod == self.ring.zero() && self.target != prod {
            return Ok(false);
        }
        let narrow = self.pairwise && tuple.len() + 1 < self.k - 1;
        for &x in candidates {
            self.counter.step()?;
            tuple.push(x);
            let next: Vec<Packed> = if narrow {
                let ring = self.ring;
                candidates
                    .iter()
                    .copied()
                    .filter(|&y| ring.mul(x, y) == ring.mul(y, x))
                    .collect()
            } else {
                Vec::new()
            };
            let found = self.run(
                tuple,
                if narrow { &next } else { candidates },
                self.ring.add(sum, x),
                self.ring.mul(prod, x),
            )?;
            if found {
                return Ok(true);
            }
            tuple.pop();
        }
        Ok(false)
    }
}

fn search(
    a: &Matrix,
    k: usize,
    candidates: Vec<Matrix>,
    pairwise: bool,
    what: &'static str,
    budget: &Budget,
) -> Result<Option<Vec<Matrix>>, SearchError> {
    let ring = DenseRing::arithmetic(a.field(), a.n())?;
    // a singular factor makes the product singular
    let invertible = a.is_invertible();
    let candidates: Vec<Packed> = candidates
        .iter()
        .filter(|x| !invertible || x.is_invertible())
        .map(|x| ring.from_matrix(x))
        .collect();
    let mut dfs = Dfs {
        ring: &ring,
        target: ring.from_matrix(a),
        k,
        pairwise,
        counter: StepCounter::new(what, budget),
    };
    let mut tuple = Vec::with_capacity(k);
    let found = dfs.run(&mut tuple, &candidates, ring.zero(), ring.identity())?;
    Ok(found.then(|| tuple.into_iter().map(|x| ring.to_matrix(x)).collect()))
}

/// First balanced k-tuple (in subalgebra enumeration order) of polynomials in `a` with
/// product `a`, or `None` if the algebra generated by `a` contains none.
///
/// The budget counts search nodes actually visited.
pub fn subalgebra_search(
    a: &Matrix,
    k: usize,
    budget: &Budget,
) -> Result<Option<Vec<Matrix>>, SearchError> {
    check_k(k)?;
    let sub = subalgebra_of(a, budget)?;
    search(a, k, sub.elements, false, "subalgebra search", budget)
}

/// Complete search for pairwise commuting balanced factorizations: every factor of such a
/// factorization commutes with the product, so it suffices to range over the centralizer.
pub fn centralizer_search(
    a: &Matrix,
    k: usize,
    budget: &Budget,
) -> Result<Option<Vec<Matrix>>, SearchError> {
    check_k(k)?;
    let cent = centralizer(a, budget)?;
    search(a, k, cent, true, "centralizer search", budget)
}

/// A verified commuting balanced k-factorization of `a` with factors in the algebra generated
/// by `a`. When the decision predicate holds this search is complete, so `SearchExhausted`
/// means the predicate and the search disagree.
pub fn commuting_factor(
    a: &Matrix,
    k: usize,
    budget: &Budget,
) -> Result<MatrixCertificate, SearchError> {
    let q = a.field().order();
    if !decide_matrix(q, k)? {
        return Err(SearchError::DecisionNo { q, k });
    }
    match subalgebra_search(a, k, budget)? {
        Some(factors) => Ok(MatrixCertificate::checked(
            a.clone(),
            factors,
            true,
            true,
            SearchMethod::SubalgebraSearch,
        )?),
        None => Err(SearchError::SearchExhausted {
            q,
            k,
            target: a.render(),
        }),
    }
}

/// Eigenvalue of `a E + J`, if `m` has that shape.
fn jordan_eigenvalue(m: &Matrix) -> Option<Gf> {
    let n = m.n();
    if n < 2 {
        return None;
    }
    let a = m.get(0, 0);
    let jordan = Matrix::jordan_cell(&a, n).ok()?;
    (jordan == *m).then_some(a)
}

/// Reads off the diagonal of each factor of a factorization of `a E + J`. Each factor commutes
/// with `J`, so it is upper triangular with constant diagonal, and the diagonals multiply to
/// `a` and sum to zero. For `a != 0` the result is required to be non-power.
pub fn jordan_reduction(cert: &MatrixCertificate) -> Result<ScalarCertificate<Gf>, SearchError> {
    cert.verify()?;
    let a = jordan_eigenvalue(&cert.target).ok_or(SearchError::NotJordanCell)?;
    let mut eigen = Vec::with_capacity(cert.k);
    for (i, x) in cert.factors.iter().enumerate() {
        if !x.commutes(&cert.target)? {
            return Err(SearchError::OutsideCentralizer(i));
        }
        eigen.push(x.get(0, 0));
    }
    let scalar = ScalarCertificate::checked(a.clone(), eigen, Provenance::JordanReduction)?;
    if !a.is_zero() && !scalar.nonpower {
        return Err(Rejection::PowerDecomposition.into());
    }
    Ok(scalar)
}

/// No matrix squares to the nilpotent Jordan cell `J_n` (exhaustive).
pub fn jordan_not_square(
    field: &GaloisField,
    n: usize,
    budget: &Budget,
) -> Result<bool, SearchError> {
    if n < 2 {
        return Err(SearchError::Unsupported("J_1 = 0 is a square".into()));
    }
    let ring = DenseRing::new(field, n, budget)?;
    let j = ring.from_matrix(&Matrix::jordan_cell(&field.zero(), n)?);
    Ok((0..ring.size()).all(|r| {
        let x = ring.unrank(r);
        ring.mul(x, x) != j
    }))
}
