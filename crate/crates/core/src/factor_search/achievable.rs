//! Which n x n matrices over GF(q) admit a balanced k-factorization at all.
//!
//! Engines: a square scan for k = 2, one pass over all pairs for k = 3, meet-in-the-middle on
//! the pair sum for k = 4, a naive odometer over all (k-1)-prefixes for cross-checks, and a
//! per-target subalgebra search when the factors must commute. Work is split into fixed index
//! ranges and merged in index order, so bitsets and witnesses do not depend on thread count.

use rayon::prelude::*;

use super::certificate::{MatrixCertificate, SearchMethod};
use super::commuting::subalgebra_search;
use super::SearchError;
use crate::budget::{space_size, Budget, BudgetExceeded};
use crate::fields::GaloisField;
use crate::matrix_ring::{DenseRing, Gf2Ring, Matrix, MatrixIndex, RingEngine};

/// Prefix ranks handled per parallel task.
const CHUNK: u32 = 64;
/// Pair sums combined per round of the meet-in-the-middle engine before checking for early exit.
const SUM_CHUNK: usize = 32;
/// Largest number of (sum, product) entries the meet-in-the-middle tables may hold.
pub const MITM_TABLE_CAP: u64 = 1 << 24;

/// Targets marked by an engine, one bit per [`MatrixIndex`], with the first witness found.
#[derive(Debug, Clone)]
pub struct AchievableSet {
    pub field: GaloisField,
    pub n: usize,
    pub k: usize,
    pub commuting_required: bool,
    pub method: SearchMethod,
    size: u32,
    bits: Vec<u64>,
    /// Factor ranks, left to right.
    witnesses: Vec<Option<Box<[u32]>>>,
}

struct Marks {
    bits: Vec<u64>,
    witnesses: Vec<Option<Box<[u32]>>>,
    count: u32,
}

impl Marks {
    fn new(size: u32) -> Self {
        Marks {
            bits: vec![0; (size as usize).div_ceil(64)],
            witnesses: vec![None; size as usize],
            count: 0,
        }
    }

    #[inline]
    fn has(&self, t: u32) -> bool {
        self.bits[(t / 64) as usize] >> (t % 64) & 1 == 1
    }

    fn mark(&mut self, t: u32, witness: impl FnOnce() -> Box<[u32]>) {
        if !self.has(t) {
            self.bits[(t / 64) as usize] |= 1 << (t % 64);
            self.witnesses[t as usize] = Some(witness());
            self.count += 1;
        }
    }

    fn full(&self) -> bool {
        self.count as usize == self.witnesses.len()
    }
}

impl AchievableSet {
    fn from_marks(
        field: &GaloisField,
        n: usize,
        k: usize,
        commuting_required: bool,
        method: SearchMethod,
        marks: Marks,
    ) -> Self {
        AchievableSet {
            field: field.clone(),
            n,
            k,
            commuting_required,
            method,
            size: marks.witnesses.len() as u32,
            bits: marks.bits,
            witnesses: marks.witnesses,
        }
    }

    /// Number of n x n matrices.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn contains_index(&self, index: MatrixIndex) -> bool {
        index.0 < self.size as u64 && self.bits[(index.0 / 64) as usize] >> (index.0 % 64) & 1 == 1
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.field().same_field(&self.field) && m.n() == self.n && self.contains_index(m.index())
    }

    pub fn count(&self) -> u32 {
        self.bits.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.size
    }

    /// Matrices with no balanced factorization, in index order.
    pub fn missing(&self) -> Vec<Matrix> {
        (0..self.size as u64)
            .map(MatrixIndex)
            .filter(|&i| !self.contains_index(i))
            .map(|i| Matrix::from_index(&self.field, self.n, i).expect("in range"))
            .collect()
    }

    pub fn witness(&self, index: MatrixIndex) -> Option<Vec<Matrix>> {
        let w = self.witnesses.get(index.0 as usize)?.as_ref()?;
        Some(
            w.iter()
                .map(|&r| {
                    Matrix::from_index(&self.field, self.n, MatrixIndex(r as u64))
                        .expect("in range")
                })
                .collect(),
        )
    }

    /// Verified certificate for the target at `index`, if it was marked.
    pub fn certificate(
        &self,
        index: MatrixIndex,
    ) -> Option<Result<MatrixCertificate, SearchError>> {
        let factors = self.witness(index)?;
        let target = Matrix::from_index(&self.field, self.n, index).expect("in range");
        let commuting = self.commuting_required;
        Some(
            MatrixCertificate::checked(target, factors, commuting, commuting, self.method)
                .map_err(SearchError::from),
        )
    }
}

fn marks_of_chunks(size: u32, chunks: Vec<Vec<(u32, Box<[u32]>)>>) -> Marks {
    let mut marks = Marks::new(size);
    for chunk in chunks {
        for (t, w) in chunk {
            marks.mark(t, || w);
        }
    }
    marks
}

fn squares<R: RingEngine>(ring: &R) -> Marks {
    let mut marks = Marks::new(ring.size());
    for r in 0..ring.size() {
        let x = ring.unrank(r);
        let minus = ring.neg(x);
        let t = ring.rank(ring.mul(x, minus));
        marks.mark(t, || Box::new([r, ring.rank(minus)]));
    }
    marks
}

fn one_pass<R: RingEngine>(ring: &R, budget: &Budget) -> Result<Marks, SearchError> {
    let size = ring.size();
    budget.check_iterations("one-pass sweep", space_size(size as u64, 2))?;
    let all: Vec<R::Elem> = (0..size).map(|r| ring.unrank(r)).collect();
    let starts: Vec<u32> = (0..size).step_by(CHUNK as usize).collect();
    let chunks: Vec<Vec<(u32, Box<[u32]>)>> = starts
        .par_iter()
        .map(|&start| {
            let mut first: Vec<Option<(u32, u32)>> = vec![None; size as usize];
            let mut order = Vec::new();
            for r1 in start..(start + CHUNK).min(size) {
                let x1 = all[r1 as usize];
                for (r2, &x2) in all.iter().enumerate() {
                    let x3 = ring.neg(ring.add(x1, x2));
                    let t = ring.rank(ring.mul(ring.mul(x1, x2), x3));
                    if first[t as usize].is_none() {
                        first[t as usize] = Some((r1, r2 as u32));
                        order.push(t);
                    }
                }
            }
            order
                .into_iter()
                .map(|t| {
                    let (r1, r2) = first[t as usize].unwrap();
                    let x3 = ring.neg(ring.add(all[r1 as usize], all[r2 as usize]));
                    (t, Box::new([r1, r2, ring.rank(x3)]) as Box<[u32]>)
                })
                .collect()
        })
        .collect();
    Ok(marks_of_chunks(size, chunks))
}

fn meet_in_the_middle<R: RingEngine>(ring: &R, budget: &Budget) -> Result<Marks, SearchError> {
    let size = ring.size();
    let pairs = space_size(size as u64, 2);
    if pairs > MITM_TABLE_CAP as u128 {
        return Err(BudgetExceeded {
            what: "meet-in-the-middle tables",
            needed: pairs,
            cap: MITM_TABLE_CAP,
        }
        .into());
    }
    budget.check_iterations("meet-in-the-middle tables", pairs)?;
    let all: Vec<R::Elem> = (0..size).map(|r| ring.unrank(r)).collect();

    // products[s]: distinct products X1 X2 with X1 + X2 = s, ascending, with the first X1
    let products: Vec<Vec<(u32, u32)>> = (0..size)
        .into_par_iter()
        .map(|s| {
            let sum = all[s as usize];
            let mut first = vec![u32::MAX; size as usize];
            for (r1, &x1) in all.iter().enumerate() {
                let p = ring.rank(ring.mul(x1, ring.sub(sum, x1)));
                if first[p as usize] == u32::MAX {
                    first[p as usize] = r1 as u32;
                }
            }
            first
                .into_iter()
                .enumerate()
                .filter(|&(_, r1)| r1 != u32::MAX)
                .map(|(p, r1)| (p as u32, r1))
                .collect()
        })
        .collect();
    let neg_of: Vec<u32> = all.iter().map(|&x| ring.rank(ring.neg(x))).collect();

    let mut marks = Marks::new(size);
    let mut spent: u128 = 0;
    let sums: Vec<u32> = (0..size).collect();
    for round in sums.chunks(SUM_CHUNK) {
        spent += round
            .iter()
            .map(|&s| {
                (products[s as usize].len() * products[neg_of[s as usize] as usize].len()) as u128
            })
            .sum::<u128>();
        budget.check_iterations("meet-in-the-middle combination", spent)?;
        let snapshot = &marks;
        let found: Vec<Vec<(u32, Box<[u32]>)>> = round
            .par_iter()
            .map(|&s| {
                let neg_s = neg_of[s as usize];
                let mut local = vec![false; size as usize];
                let mut hits = Vec::new();
                for &(p, r1) in &products[s as usize] {
                    let left = all[p as usize];
                    for &(p2, r3) in &products[neg_s as usize] {
                        let t = ring.rank(ring.mul(left, all[p2 as usize]));
                        if local[t as usize] || snapshot.has(t) {
                            continue;
                        }
                        local[t as usize] = true;
                        let x2 = ring.rank(ring.sub(all[s as usize], all[r1 as usize]));
                        let x4 = ring.rank(ring.sub(all[neg_s as usize], all[r3 as usize]));
                        hits.push((t, Box::new([r1, x2, r3, x4]) as Box<[u32]>));
                    }
                }
                hits
            })
            .collect();
        for hits in found {
            for (t, w) in hits {
                marks.mark(t, || w);
            }
        }
        if marks.full() {
            break;
        }
    }
    Ok(marks)
}

fn naive<R: RingEngine>(ring: &R, k: usize, budget: &Budget) -> Result<Marks, SearchError> {
    let size = ring.size();
    budget.check_iterations("naive sweep", space_size(size as u64, k as u64 - 1))?;
    let all: Vec<R::Elem> = (0..size).map(|r| ring.unrank(r)).collect();
    let mut marks = Marks::new(size);
    let mut prefix = vec![0u32; k - 1];
    loop {
        let mut sum = ring.zero();
        let mut prod = ring.identity();
        for &r in &prefix {
            sum = ring.add(sum, all[r as usize]);
            prod = ring.mul(prod, all[r as usize]);
        }
        let last = ring.neg(sum);
        let t = ring.rank(ring.mul(prod, last));
        marks.mark(t, || {
            let mut w = prefix.clone();
            w.push(ring.rank(last));
            w.into_boxed_slice()
        });
        // odometer, last position fastest
        let mut pos = k - 1;
        loop {
            if pos == 0 {
                return Ok(marks);
            }
            pos -= 1;
            prefix[pos] += 1;
            if prefix[pos] < size {
                break;
            }
            prefix[pos] = 0;
        }
    }
}

fn commuting<R: RingEngine>(ring: &R, k: usize, budget: &Budget) -> Result<Marks, SearchError> {
    let size = ring.size();
    let found: Vec<Option<Box<[u32]>>> = (0..size)
        .into_par_iter()
        .map(|r| {
            let a = ring.to_matrix(ring.unrank(r));
            Ok(subalgebra_search(&a, k, budget)?
                .map(|f| f.iter().map(|x| x.index().0 as u32).collect()))
        })
        .collect::<Result<_, SearchError>>()?;
    let mut marks = Marks::new(size);
    for (t, w) in found.into_iter().enumerate() {
        if let Some(w) = w {
            marks.mark(t as u32, || w);
        }
    }
    Ok(marks)
}

enum Engine {
    Squares,
    OnePass,
    MeetInTheMiddle,
    Naive,
    Commuting,
}

fn run_engine<R: RingEngine>(
    ring: &R,
    engine: &Engine,
    k: usize,
    budget: &Budget,
) -> Result<Marks, SearchError> {
    match engine {
        Engine::Squares => Ok(squares(ring)),
        Engine::OnePass => one_pass(ring, budget),
        Engine::MeetInTheMiddle => meet_in_the_middle(ring, budget),
        Engine::Naive => naive(ring, k, budget),
        Engine::Commuting => commuting(ring, k, budget),
    }
}

fn build(
    field: &GaloisField,
    n: usize,
    k: usize,
    commuting_required: bool,
    engine: Engine,
    method: SearchMethod,
    budget: &Budget,
) -> Result<AchievableSet, SearchError> {
    if k < 2 {
        return Err(SearchError::Unsupported(
            "at least two factors are required".into(),
        ));
    }
    let marks = if field.order() == 2 {
        run_engine(&Gf2Ring::new(n, budget)?, &engine, k, budget)?
    } else {
        run_engine(&DenseRing::new(field, n, budget)?, &engine, k, budget)?
    };
    Ok(AchievableSet::from_marks(
        field,
        n,
        k,
        commuting_required,
        method,
        marks,
    ))
}

/// The set of n x n matrices over `field` with a balanced k-factorization.
///
/// Without `commuting_required` this handles k <= 4 (one-pass for k = 3, meet-in-the-middle
/// for k = 4). With it, each target is searched inside the algebra it generates, which is
/// complete whenever the commuting decision predicate holds.
pub fn achievable_set(
    field: &GaloisField,
    n: usize,
    k: usize,
    commuting_required: bool,
    budget: &Budget,
) -> Result<AchievableSet, SearchError> {
    let (engine, method) = match (commuting_required, k) {
        (true, _) => (Engine::Commuting, SearchMethod::SubalgebraSearch),
        (false, 2) => (Engine::Squares, SearchMethod::PairScan),
        (false, 3) => (Engine::OnePass, SearchMethod::PairScan),
        (false, 4) => (Engine::MeetInTheMiddle, SearchMethod::MeetInTheMiddle),
        (false, _) => {
            return Err(SearchError::Unsupported(format!(
                "non-commuting achievable sets are computed for k <= 4, got {k}"
            )))
        }
    };
    build(field, n, k, commuting_required, engine, method, budget)
}

/// Same marks as [`achievable_set`] (non-commuting) from a plain walk over all
/// `(k-1)`-prefixes; only for cross-checking small cases.
pub fn naive_achievable_set(
    field: &GaloisField,
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<AchievableSet, SearchError> {
    build(
        field,
        n,
        k,
        false,
        Engine::Naive,
        SearchMethod::PairScan,
        budget,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_ring::similarity_class;

    fn gf2() -> GaloisField {
        GaloisField::prime(2).unwrap()
    }

    fn rendered(ms: &[Matrix]) -> Vec<String> {
        ms.iter().map(Matrix::render).collect()
    }

    #[test]
    fn gf2_two_by_two_three_factors() {
        let set = achievable_set(&gf2(), 2, 3, false, &Budget::default()).unwrap();
        assert_eq!(rendered(&set.missing()), vec!["0,1;1,1", "1,1;1,0"]);
        assert_eq!(set.count(), 14);
    }

    #[test]
    fn gf2_two_by_two_four_factors() {
        let b = Budget::default();
        let f = gf2();
        let set = achievable_set(&f, 2, 4, false, &b).unwrap();
        let class = similarity_class(&Matrix::parse(&f, "1,0;1,1").unwrap(), &b).unwrap();
        assert_eq!(set.missing(), class.members);
    }

    #[test]
    fn engines_agree_on_gf2() {
        let b = Budget::default();
        let f = gf2();
        for k in 2..=4 {
            let naive = naive_achievable_set(&f, 2, k, &b).unwrap();
            let fast = achievable_set(&f, 2, k, false, &b).unwrap();
            assert_eq!(naive.bits(), fast.bits(), "k = {k}");
        }
        let dense = {
            let ring = DenseRing::new(&f, 2, &b).unwrap();
            one_pass(&ring, &b).unwrap()
        };
        let packed = one_pass(&Gf2Ring::new(2, &b).unwrap(), &b).unwrap();
        assert_eq!(dense.bits, packed.bits);
        assert_eq!(dense.witnesses, packed.witnesses);
    }

    #[test]
    fn witnesses_verify() {
        let b = Budget::default();
        let f = GaloisField::prime(3).unwrap();
        for k in 3..=4 {
            let set = achievable_set(&f, 2, k, false, &b).unwrap();
            assert!(set.is_full());
            for i in 0..set.size() as u64 {
                let cert = set.certificate(MatrixIndex(i)).unwrap().unwrap();
                assert_eq!(cert.k, k);
            }
        }
    }

    #[test]
    fn commuting_sets() {
        let b = Budget::default();
        let f = GaloisField::prime(5).unwrap();
        let set = achievable_set(&f, 2, 3, true, &b).unwrap();
        assert!(set.is_full());
        let cert = set.certificate(MatrixIndex(77)).unwrap().unwrap();
        assert!(cert.commuting && cert.in_subalgebra);
        let set = achievable_set(&gf2(), 2, 3, true, &b).unwrap();
        assert!(!set.is_full());
    }

    #[test]
    fn budget_errors() {
        let tight = Budget::with_iterations(100);
        assert!(matches!(
            achievable_set(&GaloisField::prime(3).unwrap(), 2, 3, false, &tight),
            Err(SearchError::Budget(_))
        ));
        assert!(matches!(
            achievable_set(&gf2(), 2, 5, false, &Budget::default()),
            Err(SearchError::Unsupported(_))
        ));
    }
}
