//! Randomized exact checks of the two structured-determinant identities,
//! and the seeded random-measure generator shared by the property suites.
//!
//! For moments `s_k` of a measure with `n` atoms:
//!
//! * any `(n+p) x (n+p)` determinant whose first `n+1` rows are shifted
//!   moment rows `(s_c, s_{c+1}, ..., s_{c+n+p-1})` vanishes, whatever the
//!   remaining `p-1` rows are;
//! * the order `n+p+1` matrix that is Hankel up to the anti-diagonal
//!   `i+j = 2n+p`, carries free values `x_0..x_p` on that anti-diagonal and
//!   arbitrary fill below it, has determinant
//!   `(-1)^(p(p+1)/2) D_{n-1} prod_j (x_j - s_{2n+p})`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{det_exact, ExactScalar, Matrix};
use crate::hankel::{det_sequence, MomentWindow};
use crate::recovery::{exact_moments, DiscreteMeasure};

/// SplitMix64. The stream is a pure function of the seed on every platform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (rejection sampled, no modulo bias).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi as i128 - lo as i128 + 1) as u128;
        if span > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        (lo as i128 + self.below(span as u64) as i128) as i64
    }

    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.range_i64(lo as i64, hi as i64) as usize
    }

    /// Rational `k / q` with `1 <= q <= max_den` and `|k| <= max_num`.
    pub fn small_rational(&mut self, max_num: i64, max_den: i64) -> ExactScalar {
        let q = self.range_i64(1, max_den);
        let k = self.range_i64(-max_num, max_num);
        BigRational::new(k.into(), q.into())
    }

    /// Independent generator for trial `index` of a campaign seeded `seed`.
    pub fn for_trial(seed: u64, index: u64) -> Self {
        let mut mix = SplitMix64::new(seed ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03));
        SplitMix64::new(mix.next_u64())
    }
}

/// Parameters for [`random_measure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureGenSpec {
    pub atom_count: usize,
    pub atom_range: (ExactScalar, ExactScalar),
    pub weight_range: (ExactScalar, ExactScalar),
    pub denominator_bound: u32,
    pub seed: u64,
}

impl MeasureGenSpec {
    pub fn new(atom_count: usize, seed: u64) -> Self {
        MeasureGenSpec {
            atom_count,
            atom_range: (ExactScalar::from_integer((-3).into()), ExactScalar::from_integer(3.into())),
            weight_range: (BigRational::new(1.into(), 8.into()), ExactScalar::from_integer(2.into())),
            denominator_bound: 4,
            seed,
        }
    }
}

/// A rational `k / q` in `[lo, hi]` with `q <= den`, or `None` if the drawn
/// denominator has no numerator in range.
fn draw_in_range(rng: &mut SplitMix64, lo: &ExactScalar, hi: &ExactScalar, den: u32) -> Option<ExactScalar> {
    let q = rng.range_i64(1, den as i64);
    let qr = BigRational::from_integer(q.into());
    let kmin = (lo * &qr).ceil().to_integer();
    let kmax = (hi * &qr).floor().to_integer();
    if kmin > kmax {
        return None;
    }
    let span = &kmax - &kmin + BigInt::one();
    let offset = match u64::try_from(&span) {
        Ok(s) => BigInt::from(rng.below(s)),
        Err(_) => BigInt::from(rng.next_u64()) % &span,
    };
    Some(BigRational::new(kmin + offset, q.into()))
}

/// Whether `[lo, hi]` holds at least `count` distinct rationals with
/// denominator at most `den`.
fn has_enough_rationals(lo: &ExactScalar, hi: &ExactScalar, den: u32, count: usize) -> bool {
    let mut seen = BTreeSet::new();
    for q in (1..=den as i64).rev() {
        let qr = BigRational::from_integer(q.into());
        let kmin = (lo * &qr).ceil().to_integer();
        let kmax = (hi * &qr).floor().to_integer();
        if kmax >= kmin && &kmax - &kmin + BigInt::one() >= BigInt::from(count) {
            return true;
        }
        let mut k = kmin;
        while k <= kmax {
            seen.insert(BigRational::new(k.clone(), q.into()));
            if seen.len() >= count {
                return true;
            }
            k += 1;
        }
    }
    false
}

/// Random measure with `atom_count` distinct rational atoms and positive
/// rational weights, deterministic in `spec.seed`.
pub fn random_measure(spec: &MeasureGenSpec) -> Result<DiscreteMeasure> {
    let (alo, ahi) = &spec.atom_range;
    let (wlo, whi) = &spec.weight_range;
    let den = spec.denominator_bound;
    if spec.atom_count == 0 || den == 0 {
        return Err(Error::InfeasibleSpec("need at least one atom and a positive denominator bound".into()));
    }
    if alo > ahi || !has_enough_rationals(alo, ahi, den, spec.atom_count) {
        return Err(Error::InfeasibleSpec(format!(
            "[{alo}, {ahi}] has fewer than {} rationals with denominator <= {den}",
            spec.atom_count
        )));
    }
    let wlo_pos = if wlo.is_positive() { wlo.clone() } else { BigRational::new(1.into(), den.into()) };
    if wlo_pos > *whi || !has_enough_rationals(&wlo_pos, whi, den, 1) {
        return Err(Error::InfeasibleSpec(format!("no positive weight in [{wlo}, {whi}] with denominator <= {den}")));
    }

    let mut rng = SplitMix64::new(spec.seed);
    let mut atoms = BTreeSet::new();
    while atoms.len() < spec.atom_count {
        if let Some(x) = draw_in_range(&mut rng, alo, ahi, den) {
            atoms.insert(x);
        }
    }
    let pairs = atoms
        .into_iter()
        .map(|x| loop {
            if let Some(m) = draw_in_range(&mut rng, &wlo_pos, whi, den) {
                break (x.clone(), m);
            }
        })
        .collect();
    DiscreteMeasure::from_exact(pairs)
}

/// Exact moments `s_0..s_{count-1}` of a measure with rational atoms and
/// weights.
pub fn exact_measure_moments(mu: &DiscreteMeasure, count: usize) -> Result<Vec<ExactScalar>> {
    let pairs =
        mu.exact_pairs().ok_or_else(|| Error::BadShape("measure must have rational atoms and weights".into()))?;
    Ok(exact_moments(&pairs, count))
}

/// Assembles the `(n+p) x (n+p)` matrix whose first `n+1` rows are
/// `(s_{c_i}, ..., s_{c_i+n+p-1})` and whose last `p-1` rows are `filler`.
pub fn det1_matrix(mu: &DiscreteMeasure, cs: &[usize], p: usize, filler: &Matrix) -> Result<Matrix> {
    let n = mu.len();
    if p == 0 {
        return Err(Error::BadShape("p must be at least 1".into()));
    }
    if cs.len() != n + 1 {
        return Err(Error::BadShape(format!("need {} shifts, got {}", n + 1, cs.len())));
    }
    if cs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadShape("shifts must be strictly increasing".into()));
    }
    let width = n + p;
    if filler.rows() != p - 1 || (p > 1 && filler.cols() != width) {
        return Err(Error::BadShape(format!(
            "filler must be {}x{width}, got {}x{}",
            p - 1,
            filler.rows(),
            filler.cols()
        )));
    }
    let s = exact_measure_moments(mu, cs[n] + width)?;
    Ok(Matrix::from_fn(width, width, |i, j| if i <= n { s[cs[i] + j].clone() } else { filler[(i - n - 1, j)].clone() }))
}

/// Determinant of [`det1_matrix`]; zero whenever `mu` has `n` atoms.
pub fn det1_determinant(mu: &DiscreteMeasure, cs: &[usize], p: usize, filler: &Matrix) -> Result<ExactScalar> {
    det_exact(&det1_matrix(mu, cs, p, filler)?)
}

/// One instance of the anti-diagonal identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Det2Instance {
    pub n: usize,
    pub p: usize,
    pub base_measure: DiscreteMeasure,
    /// `x_0..x_p`, placed at `(n+j, n+p-j)`.
    pub xs: Vec<ExactScalar>,
    /// Order `n+p+1`; only entries with `i+j >= 2n+p+1` are used.
    pub fill: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Det2Report {
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    pub equal: bool,
}

impl Det2Instance {
    fn validate(&self) -> Result<()> {
        let order = self.n + self.p + 1;
        if self.n == 0 || self.p == 0 {
            return Err(Error::BadShape("n and p must be at least 1".into()));
        }
        if self.base_measure.len() != self.n {
            return Err(Error::BadShape(format!(
                "base measure has {} atoms, need {}",
                self.base_measure.len(),
                self.n
            )));
        }
        if self.xs.len() != self.p + 1 {
            return Err(Error::BadShape(format!("need {} anti-diagonal values, got {}", self.p + 1, self.xs.len())));
        }
        if self.fill.rows() != order || self.fill.cols() != order {
            return Err(Error::BadShape(format!("fill must be {order}x{order}")));
        }
        Ok(())
    }

    /// Moments `s_0..s_{2n+p}` of the base measure.
    pub fn moments(&self) -> Result<Vec<ExactScalar>> {
        exact_measure_moments(&self.base_measure, 2 * self.n + self.p + 1)
    }

    pub fn matrix(&self) -> Result<Matrix> {
        self.validate()?;
        let (n, p) = (self.n, self.p);
        let s = self.moments()?;
        let anti = 2 * n + p;
        Ok(Matrix::from_fn(n + p + 1, n + p + 1, |i, j| match (i + j).cmp(&anti) {
            std::cmp::Ordering::Less => s[i + j].clone(),
            std::cmp::Ordering::Equal => self.xs[i - n].clone(),
            std::cmp::Ordering::Greater => self.fill[(i, j)].clone(),
        }))
    }

    /// `(-1)^(p(p+1)/2) D_{n-1} prod_j (x_j - s_{2n+p})`.
    pub fn closed_form(&self) -> Result<ExactScalar> {
        self.validate()?;
        let (n, p) = (self.n, self.p);
        let s = self.moments()?;
        let window = MomentWindow::new(s[..2 * n - 1].to_vec())?;
        let d_prev = det_sequence(&window).pop().unwrap();
        let target = &s[2 * n + p];
        let prod = self.xs.iter().fold(ExactScalar::one(), |acc, x| acc * (x - target));
        let value = d_prev * prod;
        Ok(if (p * (p + 1) / 2) % 2 == 1 { -value } else { value })
    }
}

pub fn det2_check(inst: &Det2Instance) -> Result<Det2Report> {
    let lhs = det_exact(&inst.matrix()?)?;
    let rhs = inst.closed_form()?;
    let equal = lhs == rhs;
    Ok(Det2Report { lhs, rhs, equal })
}

/// Size caps and value ranges for random identity instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceBounds {
    pub max_n: usize,
    pub max_p: usize,
    /// Largest last shift `c_{n+1}` for the vanishing-determinant instances.
    pub max_shift: usize,
}

impl Default for InstanceBounds {
    fn default() -> Self {
        InstanceBounds { max_n: 4, max_p: 3, max_shift: 8 }
    }
}

fn small_measure(rng: &mut SplitMix64, n: usize) -> DiscreteMeasure {
    let mut spec = MeasureGenSpec::new(n, rng.next_u64());
    spec.atom_range = (ExactScalar::from_integer((-2).into()), ExactScalar::from_integer(2.into()));
    spec.denominator_bound = 3;
    random_measure(&spec).expect("default generator spec is feasible")
}

fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.small_rational(9, 5))
}

/// Instance of the vanishing-determinant identity: a measure with `n`
/// atoms, `n+1` increasing shifts, `p`, and a `(p-1) x (n+p)` filler.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Det1Instance {
    pub measure: DiscreteMeasure,
    pub cs: Vec<usize>,
    pub p: usize,
    pub filler: Matrix,
}

impl Det1Instance {
    pub fn determinant(&self) -> Result<ExactScalar> {
        det1_determinant(&self.measure, &self.cs, self.p, &self.filler)
    }
}

pub fn random_det1_instance(rng: &mut SplitMix64, bounds: InstanceBounds) -> Det1Instance {
    let n = rng.range_usize(1, bounds.max_n.max(1));
    let p = rng.range_usize(1, bounds.max_p.max(1));
    let max_shift = bounds.max_shift.max(n);
    let mut cs = BTreeSet::new();
    while cs.len() < n + 1 {
        cs.insert(rng.range_usize(0, max_shift));
    }
    let measure = small_measure(rng, n);
    let filler = random_matrix(rng, p - 1, n + p);
    Det1Instance { measure, cs: cs.into_iter().collect(), p, filler }
}

/// Random anti-diagonal instance. With `force_collision`, one randomly
/// chosen `x_j` is set to `s_{2n+p}`.
pub fn random_det2_instance(rng: &mut SplitMix64, bounds: InstanceBounds, force_collision: bool) -> Det2Instance {
    let n = rng.range_usize(1, bounds.max_n.max(1));
    let p = rng.range_usize(1, bounds.max_p.max(1));
    let base_measure = small_measure(rng, n);
    let mut xs: Vec<ExactScalar> = (0..=p).map(|_| rng.small_rational(20, 7)).collect();
    if force_collision {
        let s = exact_measure_moments(&base_measure, 2 * n + p + 1).expect("rational measure");
        let j = rng.range_usize(0, p);
        xs[j] = s[2 * n + p].clone();
    }
    let order = n + p + 1;
    let fill = random_matrix(rng, order, order);
    Det2Instance { n, p, base_measure, xs, fill }
}

/// Copy of `inst` with every entry strictly below the anti-diagonal redrawn.
pub fn resample_fill(inst: &Det2Instance, rng: &mut SplitMix64) -> Det2Instance {
    let anti = 2 * inst.n + inst.p;
    let mut out = inst.clone();
    let order = inst.n + inst.p + 1;
    for i in 0..order {
        for j in 0..order {
            if i + j > anti {
                out.fill[(i, j)] = rng.small_rational(50, 9);
            }
        }
    }
    out
}

/// Random nonzero `k / q` with `|k| <= max_num`, `q <= max_den`.
pub fn nonzero_rational(rng: &mut SplitMix64, max_num: i64, max_den: i64) -> ExactScalar {
    loop {
        let v = rng.small_rational(max_num, max_den);
        if !v.is_zero() {
            return v;
        }
    }
}
