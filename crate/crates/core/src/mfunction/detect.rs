//! Locating eigenvalues seen from the contact set.
//!
//! Eigenvalues away from the edge poles `k ∈ πZ/ℓ` are found as drops in
//! the number of negative eigenvalues of the vertex matrix `T(k²)`, which
//! is nonincreasing between poles and equals the negative count of `M`
//! plus that of the interior block. Multiplicities are read off the
//! kernel of the amplitude system at the located point, which also covers
//! eigenvalues sitting exactly on a pole of `M`.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;

use super::vertex_matrix;
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::secular::{spectrum_report, unilateral_form};

/// Relative singular value threshold for kernel dimensions.
const NULLITY_TOL: f64 = 1e-6;
/// Distance kept from edge poles while counting.
const POLE_GAP: f64 = 1e-7;
/// Widest bracket bisection stops at, whatever the requested tolerance, so
/// the kernel computation sees an accurate point.
const BISECT_WIDTH: f64 = 1e-10;

/// Kernel dimensions of the standard-condition eigenproblem at `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRank {
    /// Multiplicity of `k²` as an eigenvalue.
    pub total: usize,
    /// Eigenfunctions that vanish at every contact.
    pub invisible: usize,
}

impl TraceRank {
    pub fn detectable(&self) -> usize {
        self.total - self.invisible.min(self.total)
    }
}

fn nullity(rows: &[Vec<f64>], cols: usize) -> usize {
    let m = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    let sv = m.svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(1.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > NULLITY_TOL * max).count();
    cols - rank
}

/// Writes each edge function as `α cos kx + β sin kx` and imposes
/// continuity and Kirchhoff conditions at every vertex; the kernel
/// dimension is the multiplicity of `k²`. Adding `u = 0` at the contacts
/// gives the invisible part.
pub fn trace_rank(g: &MetricGraph, k: f64) -> Result<TraceRank> {
    if !(k > 0.0) {
        return Err(Error::InvalidArgument(format!("trace rank needs k > 0, got {k}")));
    }
    let cols = 2 * g.edge_count();
    // endpoint id -> (value row, derivative row / k)
    let mut ends: HashMap<usize, (Vec<f64>, Vec<f64>)> = HashMap::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let kl = k * edge.length.to_f64().expect("finite length");
        let (s, c) = kl.sin_cos();
        let mut va = vec![0.0; cols];
        let mut da = vec![0.0; cols];
        va[2 * e] = 1.0;
        da[2 * e + 1] = 1.0;
        let mut vb = vec![0.0; cols];
        let mut db = vec![0.0; cols];
        vb[2 * e] = c;
        vb[2 * e + 1] = s;
        db[2 * e] = s;
        db[2 * e + 1] = -c;
        ends.insert(edge.a, (va, da));
        ends.insert(edge.b, (vb, db));
    }
    let mut rows = Vec::with_capacity(cols + g.contacts().len());
    let mut first_values = Vec::with_capacity(g.vertex_count());
    for class in g.vertices() {
        let (v0, _) = &ends[&class[0]];
        let mut kirchhoff = vec![0.0; cols];
        for x in class {
            let (v, d) = &ends[x];
            if x != &class[0] {
                rows.push(v0.iter().zip(v).map(|(a, b)| a - b).collect());
            }
            for (acc, y) in kirchhoff.iter_mut().zip(d) {
                *acc += y;
            }
        }
        rows.push(kirchhoff);
        first_values.push(v0.clone());
    }
    let total = nullity(&rows, cols);
    for &c in g.contacts() {
        rows.push(first_values[c].clone());
    }
    let invisible = nullity(&rows, cols);
    Ok(TraceRank { total, invisible })
}

/// Detectable eigenvalues as `(k, multiplicity)` with `λ = k²`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectableSpectrum {
    pub roots: Vec<(f64, usize)>,
    pub warnings: Vec<String>,
}

fn negative_count(g: &MetricGraph, k: f64) -> Option<usize> {
    let t = vertex_matrix(g, k * k)?;
    Some(SymmetricEigen::new(t).eigenvalues.iter().filter(|&&x| x < 0.0).count())
}

fn edge_poles(g: &MetricGraph, k_max: f64) -> Vec<f64> {
    let mut lengths: Vec<f64> = g.edges().iter().map(|e| e.length.to_f64().expect("finite")).collect();
    lengths.sort_by(f64::total_cmp);
    lengths.dedup();
    let mut poles = Vec::new();
    for l in lengths {
        let mut m = 1.0;
        while m * PI / l <= k_max * (1.0 + 1e-12) {
            poles.push(m * PI / l);
            m += 1.0;
        }
    }
    poles.sort_by(f64::total_cmp);
    poles.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * b.abs().max(1.0));
    poles
}

struct Scan<'a> {
    g: &'a MetricGraph,
    tol: f64,
    events: Vec<f64>,
    warnings: Vec<String>,
}

impl Scan<'_> {
    fn count(&mut self, k: f64) -> usize {
        negative_count(self.g, k).unwrap_or_else(|| {
            self.warnings.push(format!("unexpected edge pole at k = {k}"));
            0
        })
    }

    fn locate(&mut self, a: f64, na: usize, b: f64, nb: usize) {
        if na == nb {
            return;
        }
        if na < nb {
            self.warnings.push(format!("negative count increased on [{a}, {b}]"));
            return;
        }
        if b - a < self.tol {
            self.events.push(0.5 * (a + b));
            return;
        }
        let mid = 0.5 * (a + b);
        let nm = self.count(mid);
        self.locate(a, na, mid, nm);
        self.locate(mid, nm, b, nb);
    }

    fn interval(&mut self, lo: f64, hi: f64, step: f64) {
        if hi <= lo {
            return;
        }
        let pieces = ((hi - lo) / step).ceil().max(1.0) as usize;
        let h = (hi - lo) / pieces as f64;
        let mut a = lo;
        let mut na = self.count(a);
        for i in 1..=pieces {
            let b = if i == pieces { hi } else { lo + h * i as f64 };
            let nb = self.count(b);
            self.locate(a, na, b, nb);
            a = b;
            na = nb;
        }
    }
}

/// Scans `k ∈ [grid_step, k_max]` for eigenvalues with nonzero trace on
/// the contact set.
pub fn detectable_spectrum(
    g: &MetricGraph,
    k_max: f64,
    grid_step: f64,
    refine_tol: f64,
) -> Result<DetectableSpectrum> {
    if g.contacts().is_empty() {
        return Err(Error::EmptyContactSet);
    }
    if !(grid_step > 0.0) || !(k_max > grid_step) || !(refine_tol > 0.0) {
        return Err(Error::InvalidArgument("need 0 < grid_step < k_max and refine_tol > 0".into()));
    }
    let poles = edge_poles(g, k_max);
    let mut scan = Scan { g, tol: refine_tol.min(BISECT_WIDTH), events: Vec::new(), warnings: Vec::new() };
    for w in poles.windows(2) {
        if w[1] - w[0] < grid_step {
            scan.warnings.push(format!(
                "grid_step too coarse to separate singularities at k = {} and k = {}",
                w[0], w[1]
            ));
        }
    }
    let mut lo = grid_step;
    for &p in &poles {
        if p > lo {
            scan.interval(lo, p - POLE_GAP, grid_step);
        }
        lo = p + POLE_GAP;
    }
    if poles.last().is_none_or(|&p| p < k_max) {
        scan.interval(lo, k_max, grid_step);
    }
    let mut candidates: Vec<f64> = scan.events.clone();
    candidates.extend(poles.iter().copied().filter(|&p| p > grid_step));
    candidates.sort_by(f64::total_cmp);
    let merge = (10.0 * refine_tol).max(1e-9);
    let mut roots: Vec<(f64, usize)> = Vec::new();
    for k in candidates {
        if roots.last().is_some_and(|r| (k - r.0).abs() < merge) {
            continue;
        }
        let tr = trace_rank(g, k)?;
        if tr.detectable() > 0 {
            roots.push((k, tr.detectable()));
        }
    }
    Ok(DetectableSpectrum { roots, warnings: scan.warnings })
}

/// Split of a secular multiplicity into detectable and invisible parts.
#[derive(Debug, Clone, PartialEq)]
pub struct InvisibleCount {
    pub k: f64,
    pub secular: usize,
    pub detectable: usize,
    pub invisible: usize,
    pub warning: Option<String>,
}

/// Secular multiplicity at the fundamental root `k` minus the number of
/// eigenfunctions with nonzero contact trace.
pub fn invisible_multiplicity(g: &MetricGraph, k: f64) -> Result<InvisibleCount> {
    if g.contacts().is_empty() {
        return Err(Error::EmptyContactSet);
    }
    let u = unilateral_form(g)?;
    let report = spectrum_report(&u, 1e-8)?;
    let Some(&(root, secular)) = report.fundamental_roots.iter().find(|r| (r.0 - k).abs() < 1e-6) else {
        return Err(Error::InvalidArgument(format!("k = {k} is not a fundamental root")));
    };
    let detectable = trace_rank(&u, root)?.detectable();
    let (invisible, warning) = if detectable > secular {
        (0, Some(format!("detectable multiplicity {detectable} exceeds secular multiplicity {secular}")))
    } else {
        (secular - detectable, None)
    };
    Ok(InvisibleCount { k: root, secular, detectable, invisible, warning })
}
