use proptest::prelude::*;

use symglue::cli::RunConfig;
use symglue::ellcurve::{geometric_iso_for_psi, EllCurve, TwoTorsionIso};
use symglue::exactring::{poly_roots, Poly, Ring, RingElem};
use symglue::family::Family;
use symglue::glueconstruct::{construct, recover_psi, theta_smooth, weierstrass_pushforward, Cover, Involution};
use symglue::projline::{CubicMatching, MoebiusMap, ProjPoint};

const DESCRIPTORS: [&str; 6] = ["q", "fp:7", "fpk:3:2", "fpk:5:3", "ratfunc:fp:5:s", "z:45"];

fn elem(ring: &Ring, seed: &[i64; 6]) -> RingElem {
    if let Some(k) = ring.finite_degree().filter(|&k| k > 1) {
        let p = ring.characteristic() as i64;
        let c: Vec<u64> = seed[..k].iter().map(|x| x.rem_euclid(p) as u64).collect();
        return RingElem::ext_from_coeffs(ring, &c);
    }
    if let Some(base) = ring.base() {
        let num = Poly::from_i64s(base, &seed[..3]);
        let mut den = Poly::from_i64s(base, &seed[3..]);
        if den.is_zero() {
            den = Poly::one(base);
        }
        return RingElem::fraction(ring, num, den).unwrap();
    }
    if ring.characteristic() == 0 {
        let d = if seed[1] == 0 { 1 } else { seed[1] };
        return ring.from_i64(seed[0]).checked_div(&ring.from_i64(d)).unwrap();
    }
    ring.from_i64(seed[0])
}

fn seeds() -> impl Strategy<Value = [[i64; 6]; 3]> {
    prop::array::uniform3(prop::array::uniform6(-20i64..20))
}

fn distinct3(p: i64) -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(0..p).prop_filter("distinct", |[a, b, c]| a != b && a != c && b != c)
}

fn curve(ring: &Ring, e: [i64; 3]) -> EllCurve {
    EllCurve::new(e.map(|x| ring.from_i64(x))).unwrap()
}

fn perm() -> impl Strategy<Value = TwoTorsionIso> {
    (0usize..6).prop_map(|i| TwoTorsionIso::all()[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(d in 0usize..DESCRIPTORS.len(), s in seeds()) {
        let r = Ring::parse(DESCRIPTORS[d]).unwrap();
        let [a, b, c] = s.map(|x| elem(&r, &x));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, r.zero());
        if a.is_unit() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn roots_resubstitute(coeffs in prop::collection::vec(-10i64..10, 1..7), p in prop::sample::select(vec![5u64, 7, 11])) {
        let r = Ring::prime_field(p).unwrap();
        let f = Poly::from_i64s(&r, &coeffs);
        prop_assume!(!f.is_zero());
        let roots = poly_roots(&f).unwrap();
        for x in r.elements().unwrap() {
            let found = roots.iter().find(|(y, _)| *y == x);
            prop_assert_eq!(f.eval(&x).unwrap().is_zero(), found.is_some());
            if let Some((_, m)) = found {
                let lin = Poly::linear(&x);
                let (_, rem) = f.divrem(&lin.pow(*m as u32)).unwrap();
                prop_assert!(rem.is_zero());
                let (_, rem) = f.divrem(&lin.pow(*m as u32 + 1)).unwrap();
                prop_assert!(!rem.is_zero());
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(d in 0usize..DESCRIPTORS.len(), s in seeds()) {
        let r = Ring::parse(DESCRIPTORS[d]).unwrap();
        let a = elem(&r, &s[0]);
        let again = symglue::exactring::parse_elem(&r, &a.to_string()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn triples_map_exactly(n in prop::sample::select(vec!["fp:7", "fp:11", "z:15", "z:21"]), pts in prop::array::uniform6((0i64..21, 0i64..21))) {
        let r = Ring::parse(n).unwrap();
        let mk = |(u, v): (i64, i64)| ProjPoint::new(r.from_i64(u), r.from_i64(v));
        let all: Vec<ProjPoint> = match pts.iter().map(|&x| mk(x)).collect::<Result<Vec<_>, _>>() {
            Ok(v) => v,
            Err(_) => return Ok(()),
        };
        let src = [all[0].clone(), all[1].clone(), all[2].clone()];
        let dst = [all[3].clone(), all[4].clone(), all[5].clone()];
        if let Ok(g) = MoebiusMap::from_triples(&src, &dst) {
            for i in 0..3 {
                prop_assert_eq!(g.apply(&src[i]).unwrap(), dst[i].clone());
            }
        }
    }

    #[test]
    fn moebius_group_laws(n in prop::sample::select(vec!["fp:7", "z:15"]), m in prop::array::uniform3(prop::array::uniform4(0i64..15))) {
        let r = Ring::parse(n).unwrap();
        let maps: Vec<MoebiusMap> = m
            .iter()
            .filter_map(|[a, b, c, d]| MoebiusMap::new(r.from_i64(*a), r.from_i64(*b), r.from_i64(*c), r.from_i64(*d)).ok())
            .collect();
        prop_assume!(maps.len() == 3);
        let (f, g, h) = (&maps[0], &maps[1], &maps[2]);
        prop_assert_eq!(f.compose(g).compose(h), f.compose(&g.compose(h)));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert!(f.inverse().compose(f).is_identity());
        prop_assert_eq!(f.compose(&MoebiusMap::identity(&r)), f.clone());
        prop_assert_eq!(f.compose(g).inverse(), g.inverse().compose(&f.inverse()));
    }

    #[test]
    fn cubic_descent_is_frobenius_equivariant(c1 in prop::array::uniform3(0i64..7), c2 in prop::array::uniform3(0i64..7), mi in 0usize..6) {
        let f7 = Ring::prime_field(7).unwrap();
        let mk = |c: [i64; 3]| Poly::from_i64s(&f7, &[c[0], c[1], c[2], 1]);
        let (a, b) = (mk(c1), mk(c2));
        prop_assume!(a.is_squarefree() && b.is_squarefree());
        let cm = CubicMatching::new(&a, &b).unwrap();
        let m = TwoTorsionIso::all()[mi].sigma();
        if let Ok(g) = cm.gamma(m) {
            let (fr1, fr2) = cm.frobenius_action().unwrap();
            let mut conj = [0; 3];
            for i in 0..3 {
                conj[fr1[i]] = fr2[m[i]];
            }
            prop_assert_eq!(conj, m);
            prop_assert_eq!(cm.gamma(conj).unwrap(), g);
        }
    }

    #[test]
    fn geometric_iso_properties(p in prop::sample::select(vec![7i64, 11, 13]), e in distinct3(13), ep in distinct3(13), psi in perm()) {
        let r = Ring::prime_field(p as u64).unwrap();
        prop_assume!(e.iter().chain(&ep).all(|&x| x < p));
        let (e, ep) = (curve(&r, e), curve(&r, ep));
        prop_assert_eq!(geometric_iso_for_psi(&e, &e, &TwoTorsionIso::identity()).unwrap(), Some((r.one(), r.zero())));
        if let Some((u2, shift)) = geometric_iso_for_psi(&e, &ep, &psi).unwrap() {
            prop_assert_eq!(e.j_invariant(), ep.j_invariant());
            for i in 0..3 {
                prop_assert_eq!(&(&u2 * &e.roots()[i]) + &shift, ep.roots()[psi.apply(i)].clone());
            }
        }
        if e.j_invariant() != ep.j_invariant() {
            for s in TwoTorsionIso::all() {
                prop_assert!(geometric_iso_for_psi(&e, &ep, &s).unwrap().is_none());
            }
        }
    }

    #[test]
    fn construct_invariants(p in prop::sample::select(vec![11i64, 13]), e in distinct3(13), ep in distinct3(13), psi in perm(), pi in perm()) {
        let r = Ring::prime_field(p as u64).unwrap();
        prop_assume!(e.iter().chain(&ep).all(|&x| x < p));
        let (e, ep) = (curve(&r, e), curve(&r, ep));
        prop_assume!(theta_smooth(&e, &ep, &psi).unwrap());
        let g = construct(&e, &ep, &psi).unwrap();
        prop_assert_eq!(g.sextic.degree(), Some(6));
        prop_assert!(g.sextic.is_squarefree());
        prop_assert_eq!(recover_psi(&g).unwrap(), psi);
        for w in [Cover::F, Cover::FPrime] {
            prop_assert!(weierstrass_pushforward(&g, w).unwrap().is_normalized());
        }
        prop_assert_eq!(g.f.after(Involution::Tau), g.f.clone());
        prop_assert_eq!(g.fprime.after(Involution::TauPrime), g.fprime.clone());
        // relabeling the roots of E changes nothing
        let g2 = construct(&e.relabel(pi.sigma()), &ep, &psi.compose(&pi)).unwrap();
        prop_assert_eq!(g2.model_key(), g.model_key());
    }

    #[test]
    fn linear_family_bad_locus(p in prop::sample::select(vec![5u64, 7, 11]), c in prop::array::uniform4(0i64..11), psi in perm()) {
        let e = format!("0,1,s+{}", c[0]);
        let ep = format!("{},{}*s+{},s", c[1], c[2] + 1, c[3]);
        let fam = match Family::parse(p, "s", &e, &ep, &psi.to_arg()) {
            Ok(f) => f,
            Err(_) => return Ok(()),
        };
        let rep = match fam.report() {
            Ok(r) => r,
            Err(_) => return Ok(()),
        };
        let brute = fam.brute_force_bad_locus().unwrap();
        let alg: std::collections::BTreeMap<u64, _> = rep.bad.iter().map(|b| (b.s0.as_residue().unwrap(), b.primary())).collect();
        prop_assert_eq!(alg, brute);
        prop_assert!(rep.table.iter().all(|r| r.2));
    }

    #[test]
    fn config_roundtrip(
        e in "[0-9]{1,2},[0-9]{1,2},[0-9]{1,2}",
        sigma in prop::sample::select(vec!["1,2,3", "2,1,3", "3,1,2"]),
        fmt in prop::sample::select(vec!["text", "json", "csv"]),
        cmd in 0usize..5,
        flag in any::<bool>(),
        deg in 1usize..4,
    ) {
        let mut args: Vec<String> = match cmd {
            0 | 1 => {
                let mut v = vec![if cmd == 0 { "construct" } else { "verify" }.to_string()];
                v.extend(["--field", "fp:11", "--e", &e, "--eprime", &e, "--sigma", sigma].map(String::from));
                v.extend(["--trace-degree".to_string(), deg.to_string()]);
                if flag {
                    v.push("--no-point-checks".into());
                }
                v
            }
            2 => vec!["census".into(), "--field".into(), "fp:5".into()],
            3 => ["family", "--p", "7", "--e", &e, "--eprime", "0,1,s", "--sigma", sigma].map(String::from).to_vec(),
            _ => ["moebius", "--ring", "z:15", "--from", &e, "--to", "0,1,2"].map(String::from).to_vec(),
        };
        args.extend(["--format".to_string(), fmt.to_string()]);
        let parse = |a: &[String]| RunConfig::try_parse_from_args(a);
        let c = parse(&args).unwrap();
        prop_assert_eq!(parse(&c.to_args()).unwrap(), c.clone());
        let json = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), c);
    }
}

trait ParseArgs: Sized {
    fn try_parse_from_args(a: &[String]) -> Result<Self, clap::Error>;
}

impl ParseArgs for RunConfig {
    fn try_parse_from_args(a: &[String]) -> Result<Self, clap::Error> {
        use clap::Parser;
        RunConfig::try_parse_from(std::iter::once("symglue".to_string()).chain(a.iter().cloned()))
    }
}
