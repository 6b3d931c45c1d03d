//! All-roots extraction for complex polynomials: Aberth-Ehrlich simultaneous
//! iteration started on Newton-polygon circles, then a Newton polish.

use alloc::vec::Vec;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::series::EnergyPoly;

const MAX_SWEEPS: usize = 600;

/// A group of numerically coincident roots.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RootCluster {
    pub center: Complex<f64>,
    pub multiplicity: usize,
}

/// Every complex root of `p`, with multiplicity (a double root appears twice).
pub fn poly_roots<R: Real>(p: &EnergyPoly<R>) -> Result<Vec<Complex<R>>> {
    let degree = match p.degree() {
        None | Some(0) => return Err(Error::NoRoots),
        Some(d) => d,
    };
    let c = p.coeffs();
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    let mut roots: Vec<Complex<R>> = (0..zeros).map(|_| Complex::zero()).collect();
    let reduced = &c[zeros..];
    if degree - zeros == 0 {
        return Ok(roots);
    }
    let mut z = initial_guesses(reduced);
    aberth(reduced, &mut z);
    for zi in z.iter_mut() {
        polish(reduced, zi);
    }
    roots.extend(z);
    Ok(roots)
}

/// Groups roots closer than `tol * (1 + |z|)` and averages each group.
pub fn cluster_roots(roots: &[Complex<f64>], tol: f64) -> Vec<RootCluster> {
    let mut out: Vec<(Complex<f64>, usize)> = Vec::new();
    for &z in roots {
        match out
            .iter_mut()
            .find(|(c, n)| ((*c).scale(1.0 / *n as f64) - z).abs() <= tol * (1.0 + z.abs()))
        {
            Some((sum, n)) => {
                *sum += z;
                *n += 1;
            }
            None => out.push((z, 1)),
        }
    }
    out.into_iter()
        .map(|(sum, n)| RootCluster {
            center: sum.scale(1.0 / n as f64),
            multiplicity: n,
        })
        .collect()
}

/// Newton correction `p(z)/p'(z)` and the size of `p(z)` in a scale that
/// does not overflow: for `|z| > 1` the reversed polynomial is evaluated at
/// `1/z` and `|p(z)| / |z|^n` is reported instead.
fn newton_ratio<R: Real>(c: &[Complex<R>], z: Complex<R>) -> (Complex<R>, R) {
    let n = c.len() - 1;
    if z.abs() <= R::one() {
        let mut p = c[n];
        let mut dp = Complex::zero();
        for &cj in c[..n].iter().rev() {
            dp = dp * z + p;
            p = p * z + cj;
        }
        let size = p.abs();
        if dp.is_zero() {
            return (Complex::zero(), size);
        }
        (p / dp, size)
    } else {
        let y = z.inv();
        let mut q = c[0];
        let mut dq = Complex::zero();
        for &cj in c[1..].iter() {
            dq = dq * y + q;
            q = q * y + cj;
        }
        // p(z) = z^n q(y), p'(z) = z^(n-1) (n q - y q')
        let denom = q.scale(R::from_usize(n)) - y * dq;
        let size = q.abs();
        if denom.is_zero() {
            return (Complex::zero(), size);
        }
        (z * q / denom, size)
    }
}

/// Starting points spread on circles whose radii come from the upper convex
/// hull of `(j, ln|c_j|)`.
fn initial_guesses<R: Real>(c: &[Complex<R>]) -> Vec<Complex<R>> {
    let n = c.len() - 1;
    let logs: Vec<f64> = c
        .iter()
        .map(|x| {
            let a = x.abs().to_f64();
            if a > 0.0 {
                libm::log(a)
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for j in 0..=n {
        if logs[j] == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let (i0, i1) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (i1 - i0) as f64 * (logs[j] - logs[i0]) - (j - i0) as f64 * (logs[i1] - logs[i0]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(j);
    }
    let mut z = Vec::with_capacity(n);
    let tau = 2.0 * core::f64::consts::PI;
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let count = j - i;
        let radius = libm::exp((logs[i] - logs[j]) / count as f64);
        for m in 0..count {
            let theta = tau * m as f64 / count as f64 + tau * i as f64 / n as f64 + 0.4;
            let (s, co) = libm::sincos(theta);
            z.push(Complex::from_f64(radius * co, radius * s));
        }
    }
    z
}

fn aberth<R: Real>(c: &[Complex<R>], z: &mut [Complex<R>]) {
    let n = z.len();
    let tol = R::from_f64(4.0 * R::EPSILON);
    let mut done = alloc::vec![false; n];
    for _ in 0..MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (ratio, _) = newton_ratio(c, z[i]);
            if ratio.is_zero() {
                done[i] = true;
                continue;
            }
            let mut repulsion = Complex::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if !d.is_zero() {
                        repulsion += d.inv();
                    }
                }
            }
            let w = ratio / (Complex::one() - ratio * repulsion);
            if !w.is_finite() {
                done[i] = true;
                continue;
            }
            z[i] -= w;
            if w.abs() <= tol * z[i].abs() {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
}

/// Plain Newton steps, kept only while they reduce `|p|`.
fn polish<R: Real>(c: &[Complex<R>], z: &mut Complex<R>) {
    let (mut ratio, mut size) = newton_ratio(c, *z);
    for _ in 0..8 {
        if ratio.is_zero() || size == R::zero() {
            return;
        }
        let trial = *z - ratio;
        let (next_ratio, next_size) = newton_ratio(c, trial);
        // sizes from the two evaluation branches are not comparable
        let same_branch = (trial.abs() <= R::one()) == (z.abs() <= R::one());
        if same_branch && next_size >= size {
            return;
        }
        *z = trial;
        ratio = next_ratio;
        size = next_size;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;

    fn sorted_re(mut v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v
    }

    #[test]
    fn plus_minus_one() {
        let r = sorted_re(poly_roots(&EnergyPoly::<f64>::from_real(&[-1.0, 0.0, 1.0])).unwrap());
        assert!((r[0] - Complex::real(-1.0)).abs() < 1e-15);
        assert!((r[1] - Complex::real(1.0)).abs() < 1e-15);
    }

    #[test]
    fn constant_has_no_roots() {
        assert_eq!(poly_roots(&EnergyPoly::<f64>::from_real(&[3.0])), Err(Error::NoRoots));
        assert_eq!(poly_roots(&EnergyPoly::<f64>::zero()), Err(Error::NoRoots));
    }

    #[test]
    fn zero_roots_split_off() {
        let r = poly_roots(&EnergyPoly::<f64>::from_real(&[0.0, 0.0, -4.0, 1.0])).unwrap();
        assert_eq!(r.iter().filter(|z| z.is_zero()).count(), 2);
        assert!(r.iter().any(|z| (*z - Complex::real(4.0)).abs() < 1e-14));
    }

    #[test]
    fn double_root_clusters() {
        let p = EnergyPoly::<f64>::from_real(&[0.0625, 0.5, 1.0]);
        let r = poly_roots(&p).unwrap();
        let cl = cluster_roots(&r, 1e-8);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].multiplicity, 2);
        assert!((cl[0].center - Complex::real(-0.25)).abs() < 1e-8);
    }

    #[test]
    fn complex_roots_of_unity() {
        let mut c = alloc::vec![0.0; 7];
        c[0] = -1.0;
        c[6] = 1.0;
        let r = poly_roots(&EnergyPoly::<f64>::from_real(&c)).unwrap();
        assert_eq!(r.len(), 6);
        for z in &r {
            assert!((z.abs() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn wide_dynamic_range() {
        // (E - 1e-6)(E - 1)(E - 1e6)
        let p = EnergyPoly::<f64>::from_real(&[1.0, 1.0])
            .mul(&EnergyPoly::<f64>::from_real(&[-1.0, 1.0]))
            .mul(&EnergyPoly::<f64>::from_real(&[-1e-6, 1.0]))
            .mul(&EnergyPoly::<f64>::from_real(&[-1e6, 1.0]));
        let r = sorted_re(poly_roots(&p).unwrap());
        let expect = [-1.0, 1e-6, 1.0, 1e6];
        for (z, e) in r.iter().zip(expect) {
            assert!((z.re - e).abs() <= 1e-12 * e.abs(), "{z:?} vs {e}");
        }
    }

    #[test]
    fn extended_precision_separates_close_roots() {
        // (E - 1)(E - 1 - 1e-12)
        let d = DoubleDouble::from_f64(1.0) + DoubleDouble::from_f64(1e-12);
        let one = DoubleDouble::from_f64(1.0);
        let p = EnergyPoly::new(alloc::vec![
            Complex::real(d),
            Complex::real(-(one + d)),
            Complex::real(one),
        ]);
        let mut r: Vec<f64> = poly_roots(&p).unwrap().iter().map(|z| (z.re - one).to_f64()).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(r[0].abs() < 1e-20);
        assert!((r[1] - 1e-12).abs() < 1e-20);
    }
}
