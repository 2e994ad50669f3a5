//! Verification suites. Each suite is a list of pure cases built up front
//! from a seed, then run concurrently.

use std::time::Instant;

use quatshear::bidegree::{is_bf, s_poly};
use quatshear::calc::{dhat, has_divergence};
use quatshear::expr::{format, format_field, parse};
use quatshear::flow::{exp_series, field_from_family, flow_jet, group_law_residual, shear_flow, verify_flow, FamilyTerm, MapJet};
use quatshear::jac::{chain_rule_sides, complex_det, jacobian_volume_check, real_det};
use quatshear::linalg;
use quatshear::mat2::{Mat2, QuatMatrix2, QuatMatrix2F};
use quatshear::ncalg::{Letter, NCPoly, Truncation, VectorField};
use quatshear::quat::{int, rat, Quaternion, QuaternionF, Rational};
use quatshear::sample::{self, DivZeroSampler, SampleRng};
use quatshear::vfield::{
    c1_generators, divergence_space_basis, divergence_zero_basis, field_coordinates, linear_form, overshear_div_rep, real_span,
    shear_decompose, OvershearSpec, ShearSpec,
};
use rand::Rng;
use rayon::prelude::*;

use crate::obstruction::{exponential_reference, exponential_target, obstruction_analysis, shear_composition};
use crate::report::{Failure, VerificationReport};

pub const SUITES: [&str; 10] = ["crcthm", "c1", "diver", "p1", "flows", "chainrule", "detd", "e3e4", "composition", "obstruction"];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub max_degree: Option<usize>,
    pub seed: u64,
}

type Check = Box<dyn Fn() -> Result<(), Failure> + Send + Sync>;

struct Case {
    check: Check,
}

fn case(check: impl Fn() -> Result<(), Failure> + Send + Sync + 'static) -> Case {
    Case { check: Box::new(check) }
}

fn ensure(ok: bool, f: impl FnOnce() -> Failure) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(f())
    }
}

fn pair(p: &(NCPoly, NCPoly)) -> String {
    format!("{} ; {}", format(&p.0), format(&p.1))
}

fn is_zero_pair(p: &(NCPoly, NCPoly)) -> bool {
    p.0.is_zero() && p.1.is_zero()
}

/// Run one suite (not `all`) on a pool of `jobs` threads.
pub fn run_suite(name: &str, opts: SuiteOptions, jobs: usize) -> quatshear::Result<VerificationReport> {
    let start = Instant::now();
    let (cases, notes) = build(name, opts)?;
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| quatshear::Error::InvalidArgument(e.to_string()))?;
    let failures: Vec<Failure> = pool.install(|| cases.par_iter().filter_map(|c| (c.check)().err()).collect());
    Ok(VerificationReport { suite: name.to_string(), cases: cases.len(), failures, wall_time: start.elapsed(), notes })
}

fn build(name: &str, opts: SuiteOptions) -> quatshear::Result<(Vec<Case>, Vec<String>)> {
    let mut rng = sample::rng(opts.seed);
    let d = |default: usize| opts.max_degree.unwrap_or(default);
    Ok(match name {
        "crcthm" => (crcthm(d(5)), vec![]),
        "c1" => (c1(d(5)), vec![]),
        "diver" => (diver(d(6)), vec![]),
        "p1" => (p1(d(5), &mut rng)?, vec![]),
        "flows" => (flows(d(3), &mut rng), vec![]),
        "chainrule" => (chainrule(d(3), &mut rng), vec![]),
        "detd" => (detd(&mut rng), vec![]),
        "e3e4" => (e3e4(d(6)), vec![]),
        "composition" => composition(),
        "obstruction" => (obstruction(opts.seed), vec![]),
        _ => {
            return Err(quatshear::Error::InvalidArgument(format!("unknown suite `{name}`; expected all or one of {}", SUITES.join(", "))))
        }
    })
}

fn crcthm(max_degree: usize) -> Vec<Case> {
    const ANCHOR: &str = "divergence space equals the span of the generator family";
    (0..=max_degree)
        .map(|d| {
            case(move || {
                let err = |e: quatshear::Error| Failure::new(format!("degree {d}"), format!("d = {d}"), "basis", e.to_string(), ANCHOR);
                let basis = divergence_space_basis(d).map_err(err)?;
                let gens = real_span(&c1_generators(d));
                let joint: Vec<VectorField> = basis.iter().chain(&gens).cloned().collect();
                let ranks: Vec<usize> = field_coordinates(&[&basis, &gens, &joint]).iter().map(linalg::rank).collect();
                ensure(ranks[0] == ranks[2] && ranks[1] == ranks[2], || {
                    Failure::new(
                        format!("degree {d}: span equality"),
                        format!("d = {d}"),
                        format!("equal ranks {}", ranks[2]),
                        format!("brute force {}, generators {}, joint {}", ranks[0], ranks[1], ranks[2]),
                        ANCHOR,
                    )
                })?;
                for x in &basis {
                    let div = has_divergence(x).into_result().map_err(err)?;
                    if let Err(e) = is_bf(&div) {
                        return Err(Failure::new(
                            format!("degree {d}: divergence is BF"),
                            format_field(x),
                            "BF divergence",
                            e.to_string(),
                            ANCHOR,
                        ));
                    }
                }
                for x in divergence_zero_basis(d).map_err(err)? {
                    if let Some(e) = [&x.f, &x.g].into_iter().find_map(|p| is_bf(p).err()) {
                        return Err(Failure::new(
                            format!("degree {d}: divergence-free field is BF"),
                            format_field(&x),
                            "BF components",
                            e.to_string(),
                            ANCHOR,
                        ));
                    }
                }
                Ok(())
            })
        })
        .collect()
}

fn c1(max_degree: usize) -> Vec<Case> {
    const ANCHOR: &str = "generator family fields have BF divergence";
    (0..=max_degree)
        .flat_map(c1_generators)
        .map(|x| {
            case(move || match has_divergence(&x).divergence() {
                Some(div) if is_bf(div).is_ok() => Ok(()),
                Some(div) => Err(Failure::new("generator divergence", format_field(&x), "BF", format(div), ANCHOR)),
                None => Err(Failure::new("generator divergence", format_field(&x), "a divergence", "not left linear", ANCHOR)),
            })
        })
        .collect()
}

fn diver(bound: usize) -> Vec<Case> {
    const ANCHOR: &str = "overshear representatives of S_{p,q} divergences";
    let mut out = Vec::new();
    for d in 0..=bound {
        for p in 0..=d {
            let q = d - p;
            out.push(case(move || {
                let name = format!("S_{{{p},{q}}}");
                let (field, specs) = overshear_div_rep(p, q)
                    .map_err(|e| Failure::new(&name, format!("p = {p}, q = {q}"), "representative", e.to_string(), ANCHOR))?;
                let div = has_divergence(&field).divergence().cloned();
                ensure(div.as_ref() == Some(&s_poly(p, q)), || {
                    Failure::new(
                        &name,
                        format_field(&field),
                        format(&s_poly(p, q)),
                        div.map(|d| format(&d)).unwrap_or("none".into()),
                        ANCHOR,
                    )
                })?;
                for s in specs {
                    let got = has_divergence(&s.field()).divergence().cloned();
                    let want = s.expected_divergence();
                    ensure(got.as_ref() == Some(&want), || {
                        Failure::new(
                            format!("{name} summand"),
                            s.to_string(),
                            format(&want),
                            got.map(|d| format(&d)).unwrap_or("none".into()),
                            ANCHOR,
                        )
                    })?;
                }
                Ok(())
            }));
        }
    }
    out
}

fn p1(max_degree: usize, rng: &mut SampleRng) -> quatshear::Result<Vec<Case>> {
    const ANCHOR: &str = "divergence-free fields are sums of shear fields";
    let sampler = DivZeroSampler::new(max_degree)?;
    let mut out = Vec::new();
    for n in 0..70 {
        let zero_div = n < 50;
        let x = if zero_div { sampler.field(rng) } else { sample::field_with_divergence(rng, max_degree.min(4)) };
        out.push(case(move || {
            let name = format!("{} field {n}", if zero_div { "divergence-free" } else { "divergence" });
            let dec =
                shear_decompose(&x, zero_div).map_err(|e| Failure::new(&name, format_field(&x), "decomposition", e.to_string(), ANCHOR))?;
            let back = dec.reconstruct();
            ensure(back == x, || Failure::new(&name, format_field(&x), format_field(&x), format_field(&back), ANCHOR))?;
            for s in &dec.shears {
                let div = has_divergence(&s.field()).divergence().cloned();
                ensure(s.is_real() && div.as_ref().is_some_and(|d| d.is_zero()), || {
                    Failure::new(
                        &name,
                        s.to_string(),
                        "real shear with divergence 0",
                        div.map(|d| format(&d)).unwrap_or("none".into()),
                        ANCHOR,
                    )
                })?;
            }
            ensure(!zero_div || dec.overshears.is_empty(), || {
                Failure::new(&name, format_field(&x), "no overshears", format!("{} overshears", dec.overshears.len()), ANCHOR)
            })?;
            let total: NCPoly = dec.overshears.iter().map(|s| s.expected_divergence()).sum();
            let div = has_divergence(&x).divergence().cloned();
            ensure(div.as_ref() == Some(&total), || {
                Failure::new(&name, format_field(&x), div.map(|d| format(&d)).unwrap_or("none".into()), format(&total), ANCHOR)
            })
        }));
    }
    Ok(out)
}

/// `(z e^{t z w}, e^{-t z w} w)` through `t^order`.
pub fn exponential_flow(order: u32) -> (NCPoly, NCPoly) {
    let tzw = parse("t*z*w").expect("fixed expression");
    let tr = Truncation::central(order);
    let e = exp_series(&tzw, order).expect("no constant term");
    let em = exp_series(&-&tzw, order).expect("no constant term");
    (NCPoly::z().mul_truncated(&e, &tr), em.mul_truncated(&NCPoly::w(), &tr))
}

fn flows(max_degree: usize, rng: &mut SampleRng) -> Vec<Case> {
    const ANCHOR: &str = "flow jets of shear, overshear and exponential fields";
    let mut out = vec![case(|| {
        let x = VectorField { f: parse("z^2*w").unwrap(), g: parse("-z*w^2").unwrap() };
        let phi = flow_jet(&x, 8);
        let residual = verify_flow(&x, &phi);
        ensure(is_zero_pair(&residual), || Failure::new("exponential field residual", format_field(&x), "0 ; 0", pair(&residual), ANCHOR))?;
        let expected = exponential_flow(8);
        let got = (phi.f.clone(), phi.g.clone());
        ensure(got == expected, || Failure::new("exponential field jet", format_field(&x), pair(&expected), pair(&got), ANCHOR))
    })];
    for n in 0..9 {
        let spec: Box<dyn quatshear::flow::ClosedFormFlow + Send + Sync> = match n % 3 {
            0 => Box::new(sample::real_shear(rng, max_degree)),
            1 => Box::new(sample::generalized_shear(rng, max_degree.min(3))),
            _ => Box::new(sample::real_overshear(rng, max_degree.min(2))),
        };
        out.push(case(move || {
            let order = 3;
            let closed = shear_flow(spec.as_ref(), order);
            let picard = flow_jet(&spec.field(), order);
            let x = format_field(&spec.field());
            ensure(closed == picard, || {
                Failure::new(
                    format!("closed form {n}"),
                    &x,
                    pair(&(picard.f.clone(), picard.g.clone())),
                    pair(&(closed.f.clone(), closed.g.clone())),
                    ANCHOR,
                )
            })?;
            let g = group_law_residual(&closed);
            ensure(is_zero_pair(&g), || Failure::new(format!("group law {n}"), &x, "0 ; 0", pair(&g), ANCHOR))
        }));
    }
    out
}

fn chainrule(max_degree: usize, rng: &mut SampleRng) -> Vec<Case> {
    const ANCHOR: &str = "chain rule D(F o G) = DF(G) <> DG";
    (0..20)
        .map(|n| {
            let (f, g) = (sample::map(rng, max_degree), sample::map(rng, max_degree));
            case(move || {
                let inputs = format!("F = ({}) G = ({})", pair(&(f.f.clone(), f.g.clone())), pair(&(g.f.clone(), g.g.clone())));
                let (a, b) = chain_rule_sides(&f, &g)
                    .map_err(|e| Failure::new(format!("pair {n}"), &inputs, "derivatives", e.to_string(), ANCHOR))?;
                ensure(a == b, || {
                    Failure::new(format!("pair {n}"), &inputs, format!("{:?}", a.entries), format!("{:?}", b.entries), ANCHOR)
                })
            })
        })
        .collect()
}

fn rand_qf(rng: &mut SampleRng, r: f64) -> QuaternionF {
    QuaternionF::new(rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Time-one map of the shear along `(mu, 1)` with `f(u) = u^2`.
pub fn square_shear_map(mu: Quaternion) -> MapJet {
    let spec = ShearSpec::along(mu, vec![Quaternion::zero(), Quaternion::zero(), Quaternion::one()]);
    let (f, g) = shear_flow(&spec, 1).at_time(&int(1));
    MapJet::new(f, g, 4)
}

/// Largest `|det_D DF[1,1] - 1|` over `points` for the squared shear along `(mu, 1)`.
pub fn shear_det_deviation(mu: Quaternion, points: &[(QuaternionF, QuaternionF)]) -> quatshear::Result<(f64, (QuaternionF, QuaternionF))> {
    let samples = jacobian_volume_check(&square_shear_map(mu), points, QuaternionF::ONE)?;
    Ok(samples.iter().map(|s| ((s.det_d - 1.0).abs(), (s.z, s.w))).fold((0.0, points[0]), |a, b| if b.0 > a.0 { b } else { a }))
}

/// Largest `|det_D DΦ_t[1,1] - |e^{t f(v)}||` for the overshear with
/// `A = [[mu, 1], [1, -mu]]`, `f(x) = x`, flow truncated at `t^order`.
pub fn overshear_det_deviation(mu: &Rational, t: &Rational, order: u32, points: &[(QuaternionF, QuaternionF)]) -> quatshear::Result<f64> {
    let a = QuatMatrix2::real(mu.clone(), int(1), int(1), -mu.clone());
    let spec = OvershearSpec::new(a, vec![Quaternion::zero(), Quaternion::one()])?;
    let (f, g) = shear_flow(&spec, order).at_time(t);
    let map = MapJet::new(f, g, 2 * order as usize + 2);
    let v = spec.argument();
    let tf = quatshear::quat::rat_to_f64(t);
    let mut worst: f64 = 0.0;
    for s in jacobian_volume_check(&map, points, QuaternionF::ONE)? {
        let vv = v.eval(&quatshear::ncalg::Bindings::zw(s.z, s.w))?;
        let expected = vv.scale(tf).exp().norm();
        worst = worst.max((s.det_d - expected).abs());
    }
    Ok(worst)
}

fn detd(rng: &mut SampleRng) -> Vec<Case> {
    const ANCHOR: &str = "Dieudonne determinants of shear and overshear derivatives";
    let mut out = Vec::new();
    let points: Vec<(QuaternionF, QuaternionF)> = (0..20).map(|_| (rand_qf(rng, 1.0), rand_qf(rng, 1.0))).collect();
    for mu in [0, 1, -2] {
        let pts = points.clone();
        out.push(case(move || {
            let (dev, at) = shear_det_deviation(Quaternion::from_ints(mu, 0, 0, 0), &pts)
                .map_err(|e| Failure::new(format!("real shear mu = {mu}"), "", "det 1", e.to_string(), ANCHOR))?;
            ensure(dev < 1e-9, || {
                Failure::new(
                    format!("real shear mu = {mu}"),
                    format!("z = {}, w = {}", at.0, at.1),
                    "det_D = 1",
                    format!("deviation {dev:e}"),
                    ANCHOR,
                )
            })
        }));
    }
    let pts = points.clone();
    out.push(case(move || {
        let (dev, at) =
            shear_det_deviation(Quaternion::unit_i(), &pts).map_err(|e| Failure::new("shear mu = i", "", "", e.to_string(), ANCHOR))?;
        ensure(dev >= 1e-3, || {
            Failure::new("shear mu = i", format!("z = {}, w = {}", at.0, at.1), "deviation >= 1e-3", format!("{dev:e}"), ANCHOR)
        })
    }));
    let small: Vec<(QuaternionF, QuaternionF)> = (0..10).map(|_| (rand_qf(rng, 0.4), rand_qf(rng, 0.4))).collect();
    for mu in [rat(0, 1), int(1), rat(-1, 2), int(2)] {
        let pts = small.clone();
        out.push(case(move || {
            let name = format!("overshear mu = {mu}");
            let dev = overshear_det_deviation(&mu, &rat(1, 4), 10, &pts).map_err(|e| Failure::new(&name, "", "", e.to_string(), ANCHOR))?;
            ensure(dev < 1e-6, || Failure::new(&name, "t = 1/4, order 10", "det_D = |e^{t f(v)}|", format!("deviation {dev:e}"), ANCHOR))
        }));
    }
    let matrices: Vec<(QuatMatrix2F, QuatMatrix2F)> = (0..100)
        .map(|_| {
            let mut m = || Mat2::new(rand_qf(rng, 1.0), rand_qf(rng, 1.0), rand_qf(rng, 1.0), rand_qf(rng, 1.0));
            (m(), m())
        })
        .collect();
    out.push(case(move || {
        for (m, n) in &matrices {
            let (lhs, rhs) = (m.mul(n).dieudonne_det(), m.dieudonne_det() * n.dieudonne_det());
            ensure((lhs - rhs).abs() <= 1e-9 * rhs.max(1e-300), || {
                Failure::new("multiplicativity", format!("{m} {n}"), format!("{rhs}"), format!("{lhs}"), ANCHOR)
            })?;
            let d = m.dieudonne_det();
            ensure((real_det(m) - d.powi(4)).abs() <= 1e-6 * d.powi(4).max(1.0), || {
                Failure::new("real determinant", m.to_string(), format!("{}", d.powi(4)), format!("{}", real_det(m)), ANCHOR)
            })?;
            ensure((complex_det(m) - d.powi(2)).abs() <= 1e-6 * d.powi(2).max(1.0), || {
                Failure::new("complex determinant", m.to_string(), format!("{}", d.powi(2)), format!("{}", complex_det(m)), ANCHOR)
            })?;
        }
        Ok(())
    }));
    out
}

/// `dhat_w(u^d)[h] + mu dhat_z(u^d)[h]` for `u = z - mu w`.
pub fn directional_residual(mu: &Quaternion, d: u32) -> NCPoly {
    let u = linear_form(&Quaternion::one(), &-mu).pow(d);
    let dw = dhat(&u, Letter::W, Letter::H1).expect("z, w only");
    let dz = dhat(&u, Letter::Z, Letter::H1).expect("z, w only");
    &dw + &dz.mul_quat_left(mu)
}

/// `dhat_z S_{p+1,q} - dhat_w S_{p,q+1}`.
pub fn mixed_slot_residual(p: usize, q: usize) -> NCPoly {
    let a = dhat(&s_poly(p + 1, q), Letter::Z, Letter::H1).expect("z, w only");
    let b = dhat(&s_poly(p, q + 1), Letter::W, Letter::H1).expect("z, w only");
    &a - &b
}

fn e3e4(bound: usize) -> Vec<Case> {
    const E4: &str = "dhat_z S_{p+1,q} = dhat_w S_{p,q+1}";
    const E3: &str = "directional derivative relation holds iff the node is real";
    let mut out = Vec::new();
    for d in 0..=bound {
        for p in 0..=d {
            out.push(case(move || {
                let r = mixed_slot_residual(p, d - p);
                ensure(r.is_zero(), || Failure::new(format!("mixed slot p = {p}, q = {}", d - p), "", "0", format(&r), E4))
            }));
        }
    }
    for mu in [int(0), int(1), int(2), rat(-3, 2), rat(5, 7)] {
        out.push(case(move || {
            for d in 0..=5 {
                let r = directional_residual(&Quaternion::real(mu.clone()), d);
                ensure(r.is_zero(), || Failure::new(format!("real node {mu}, d = {d}"), "", "0", format(&r), E3))?;
            }
            Ok(())
        }));
    }
    out.push(case(|| {
        let r = directional_residual(&Quaternion::unit_i(), 2);
        ensure(!r.is_zero(), || Failure::new("node i, d = 2", "", "nonzero witness", "0", E3))
    }));
    out
}

/// `(z, w + z^2) o (z + w^2, w)`.
pub fn composition_example() -> MapJet {
    let outer = MapJet::new(parse("z").unwrap(), parse("w + z^2").unwrap(), 6);
    let inner = MapJet::new(parse("z + w^2").unwrap(), parse("w").unwrap(), 6);
    outer.compose(&inner)
}

/// `X_0 = A` and `X_1 = 2 B - DX_0[A]` from `Ψ = id + t A + t^2 B + ...`,
/// by matching the `t^0` and `t^1` coefficients of `Ψ' = X(Ψ)` directly.
pub fn family_oracle(f: &MapJet) -> quatshear::Result<(VectorField, VectorField)> {
    let psi = quatshear::flow::family_flow(f)?;
    let a = VectorField { f: psi.f.t_coeff(1), g: psi.g.t_coeff(1) };
    let b = VectorField { f: psi.f.t_coeff(2), g: psi.g.t_coeff(2) };
    let along = |p: &NCPoly| -> quatshear::Result<NCPoly> {
        let dz = dhat(p, Letter::Z, Letter::H1)?.substitute(Letter::H1, &a.f);
        let dw = dhat(p, Letter::W, Letter::H1)?.substitute(Letter::H1, &a.g);
        Ok(&dz + &dw)
    };
    let x1 = VectorField { f: &b.f.scale(&int(2)) - &along(&a.f)?, g: &b.g.scale(&int(2)) - &along(&a.g)? };
    Ok((a, x1))
}

fn composition() -> (Vec<Case>, Vec<String>) {
    const ANCHOR: &str = "time-dependent field of the family F(tz, tw)/t";
    let f = composition_example();
    let terms = field_from_family(&f, 3);
    let mut notes = Vec::new();
    if let Ok(t) = &terms {
        for x in t.iter().take(2) {
            notes.push(format!("X_{} = {} ({})", x.n, format_field(&x.field), if x.is_bf() { "BF" } else { "not BF" }));
        }
    }
    let terms = std::sync::Arc::new(terms);
    let mut out = Vec::new();
    let t = terms.clone();
    let f2 = f.clone();
    out.push(case(move || {
        let terms: &Vec<FamilyTerm> = t.as_ref().as_ref().map_err(|e| Failure::new("field", "", "X_0..X_3", e.to_string(), ANCHOR))?;
        let (x0, x1) = family_oracle(&f2).map_err(|e| Failure::new("oracle", "", "", e.to_string(), ANCHOR))?;
        let want0 = quatshear::expr::parse_field("w^2 ; z^2").unwrap();
        ensure(terms[0].field == want0 && x0 == want0, || {
            Failure::new("X_0", "", format_field(&want0), format_field(&terms[0].field), ANCHOR)
        })?;
        ensure(terms[1].field == x1, || Failure::new("X_1", "", format_field(&x1), format_field(&terms[1].field), ANCHOR))?;
        ensure(terms[0].is_bf(), || Failure::new("X_0 is BF", format_field(&terms[0].field), "BF", "not BF", ANCHOR))?;
        ensure(!terms[1].is_bf(), || Failure::new("X_1 is not BF", format_field(&terms[1].field), "not BF", "BF", ANCHOR))
    }));
    out.push(case(move || {
        let terms = terms.as_ref().as_ref().map_err(|e| Failure::new("degrees", "", "", e.to_string(), ANCHOR))?;
        for x in terms {
            let bad = x.field.f.terms().chain(x.field.g.terms()).any(|(w, _)| w.degree() != x.n + 2);
            ensure(!bad, || {
                Failure::new(format!("X_{} degree", x.n), "", format!("homogeneous of degree {}", x.n + 2), format_field(&x.field), ANCHOR)
            })?;
        }
        Ok(())
    }));
    (out, notes)
}

fn obstruction(seed: u64) -> Vec<Case> {
    const ANCHOR: &str = "cubic obstruction for compositions of real shears";
    vec![
        case(move || {
            let r = obstruction_analysis(&exponential_target(6), 3, seed, Some(&exponential_reference))
                .map_err(|e| Failure::new("exponential target", "", "report", e.to_string(), ANCHOR))?;
            let shown = |r: &[Rational]| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
            ensure(!r.residual_is_zero(), || Failure::new("membership residual", "order 3", "nonzero", shown(&r.residual), ANCHOR))?;
            ensure(r.identities_hold(), || {
                let bad: Vec<String> = r.identity_checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
                Failure::new("expansion identities", "", "all hold", bad.join("; "), ANCHOR)
            })?;
            ensure(r.function_rank == 3, || Failure::new("function rank", "", "3", r.function_rank.to_string(), ANCHOR))?;
            let err = r.reference_error.unwrap_or(f64::INFINITY);
            ensure(err < 1e-9, || Failure::new("jet vs reference", "", "< 1e-9", format!("{err:e}"), ANCHOR))
        }),
        case(move || {
            let mus = [rat(1, 2), int(-2), int(3)];
            let coeffs = [
                [Quaternion::real(int(1)), Quaternion::real(rat(2, 3))],
                [Quaternion::real(int(-3)), Quaternion::real(int(1))],
                [Quaternion::real(rat(1, 5)), Quaternion::real(int(2))],
            ];
            let target = shear_composition(&mus, &coeffs, 3);
            for order in [2, 3] {
                let r = obstruction_analysis(&target, order, seed, None)
                    .map_err(|e| Failure::new("shear composition", "", "report", e.to_string(), ANCHOR))?;
                ensure(r.residual_is_zero(), || {
                    Failure::new(format!("shear composition order {order}"), "", "zero residual", format!("{:?}", r.blocking_words), ANCHOR)
                })?;
            }
            Ok(())
        }),
    ]
}
