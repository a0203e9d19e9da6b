//! The registered identities.
//!
//! Left sides are graph series from the enumerator or a direct expansion of
//! a sum; right sides are assembled from catalog series. Builders work at a
//! few extra orders internally so negative `q`-powers never starve the
//! comparison window.

use std::sync::Arc;

use super::sums::*;
use super::{Builder, Candidate, Case, Check, IdentityRecord, RegistryError};
use crate::catalog::{self, inverse_pochhammers, poch, poch_inf, pochhammer, LambertKind};
use crate::graph::{builtin, evaluate, Graph, GraphSeriesSpec, Method};
use crate::series::{frac, Exponent, Series};
use crate::theta::{
    cone_sum, q, qf, theta_1d, Cone, ConeThetaSpec, Range1D, Ray, Weight, WeightedTheta1D,
};

type R = Result<Series, RegistryError>;

const MARGIN: i64 = 3;

fn b(f: impl Fn(i64) -> R + Send + Sync + 'static) -> Builder {
    Arc::new(f)
}

/// Builder from an infallible expansion evaluated at `n + MARGIN`.
fn s(f: impl Fn(i64) -> Series + Send + Sync + 'static) -> Builder {
    Arc::new(move |n| Ok(f(n + MARGIN)))
}

fn graph(name: &'static str) -> Builder {
    b(move |n| Ok(evaluate(&builtin(name)?, n, Method::Auto)?))
}

fn graph_spec(spec: GraphSeriesSpec) -> Builder {
    b(move |n| Ok(evaluate(&spec, n, Method::Auto)?))
}

fn case(label: impl Into<String>, lhs: Builder, rhs: Builder) -> Case {
    Case {
        label: label.into(),
        lhs,
        rhs,
    }
}

fn cand(label: &str, cases: Vec<Case>) -> Candidate {
    Candidate {
        label: label.to_string(),
        cases,
    }
}

fn order_for_nodes(r: usize) -> i64 {
    match r {
        0..=5 => 50,
        6 | 7 => 30,
        _ => 24,
    }
}

const PURE: i64 = 40;

fn rec(
    id: &'static str,
    claim: &'static str,
    tags: &'static [&'static str],
    default_order: i64,
    check: Check,
) -> IdentityRecord {
    IdentityRecord {
        id,
        claim,
        tags,
        default_order,
        notes: "",
        check,
    }
}

fn noted(mut r: IdentityRecord, notes: &'static str) -> IdentityRecord {
    r.notes = notes;
    r
}

fn eq1(label: &str, lhs: Builder, rhs: Builder) -> Check {
    Check::Equal(vec![case(label, lhs, rhs)])
}

// ---- closed forms --------------------------------------------------------

fn d(n: i64) -> Series {
    catalog::divisor_series(n)
}

fn tails(n: i64) -> Series {
    catalog::sum_of_tails(n)
}

fn a_closed(k: usize, m: i64) -> Series {
    let qi = qi(m);
    let one = Series::one(m);
    match k {
        1 => qi_pow(-1, m),
        2 => &geo(1, m) * &qi_pow(-1, m),
        3 => (&(&one - &qi) * &qi_pow(-2, m)).shift_int(-1),
        4 => (&d(m) * &qi_pow(-2, m)).shift_int(-1),
        5 => (&tails(m) * &qi_pow(-3, m)).shift_int(-1),
        6 => {
            let t = &(&d(m).scale_int(2) * &qi_pow(-3, m)) - &qi_pow(-3, m);
            (&t + &qi_pow(-2, m)).shift_int(-1)
        }
        7 => {
            let inner = &(&(&(&qi * &d(m)) + &tails(m)) + &qi) - &one;
            (&(&geo(1, m) * &qi_pow(-4, m)) * &inner).shift_int(-1)
        }
        8 => {
            let inner = &(&(&qi - &one) + &d(m).scale_int(3)) - &tails(m).scale_int(2);
            (&qi_pow(-4, m) * &inner).shift_int(-2)
        }
        _ => unreachable!("closed forms exist for k <= 8"),
    }
}

/// Two-sided pentagonal sum with the weights of the bosonic form.
fn bosonic(m: i64) -> Result<Series, RegistryError> {
    let pos = WeightedTheta1D {
        a: qf(3, 2),
        b: qf(1, 2),
        c: q(0),
        poly: vec![(-3, 1), (1, 0)],
        alternating: true,
        range: Range1D::From(1),
    };
    // n = -k, k >= 1: (-1)^k (2 - 3k) q^{(3k^2 - k)/2}
    let neg = WeightedTheta1D {
        a: qf(3, 2),
        b: qf(-1, 2),
        c: q(0),
        poly: vec![(-3, 1), (2, 0)],
        alternating: true,
        range: Range1D::From(1),
    };
    Ok(&theta_1d(&pos, m)? + &theta_1d(&neg, m)?)
}

/// `sum q^{n1 n2 + ... + n1 + ... + nk} / ((q)_{n1+1} (q)_{n2} ... (q)_{nk+1})`
fn cal_h(k: usize, m: i64) -> Series {
    let ip = inverse_pochhammers(m as usize + 2, m);
    let mut out = Series::zero(m);
    let mut ns = Vec::with_capacity(k);
    fn rec(k: usize, m: i64, ip: &[Series], ns: &mut Vec<usize>, e: i64, out: &mut Series) {
        let i = ns.len();
        if i == k {
            let mut p = Series::q_pow(e, m);
            for (j, &n) in ns.iter().enumerate() {
                let idx = if j == 0 || j == k - 1 { n + 1 } else { n };
                p = &p * &ip[idx];
            }
            *out = &*out + &p;
            return;
        }
        let mut v = 0usize;
        loop {
            let add = (ns.last().map_or(0, |&p| p * v) + v) as i64;
            if e + add > m {
                break;
            }
            ns.push(v);
            rec(k, m, ip, ns, e + add, out);
            ns.pop();
            v += 1;
        }
    }
    rec(k, m, &ip, &mut ns, 0, &mut out);
    out
}

fn a_series() -> Vec<IdentityRecord> {
    const CLAIMS: [&str; 8] = [
        "H[A1] = 1/(q)_inf",
        "H[A2] = 1/((1-q)(q)_inf)",
        "H[A3] = q^-1 (1 - (q)_inf)/(q)_inf^2",
        "H[A4] = q^-1 D/(q)_inf^2",
        "H[A5] = q^-1 G/(q)_inf^3, G = sum_{n>=0} ((q)_n - (q)_inf)",
        "H[A6] = 2q^-1 D/(q)_inf^3 - q^-1/(q)_inf^3 + q^-1/(q)_inf^2",
        "H[A7] = q^-1 (-1 + (q)_inf D + G + (q)_inf)/((1-q)(q)_inf^4)",
        "H[A8] = q^-2 (-1 + (q)_inf + 3D - 2G)/(q)_inf^4",
    ];
    const IDS: [&str; 8] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"];
    const NAMES: [&str; 8] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"];
    let mut v: Vec<IdentityRecord> = (1..=8)
        .map(|k| {
            rec(
                IDS[k - 1],
                CLAIMS[k - 1],
                &["A-series", "graph"],
                order_for_nodes(k),
                eq1(
                    "graph = closed form",
                    graph(NAMES[k - 1]),
                    s(move |m| a_closed(k, m)),
                ),
            )
        })
        .collect();
    v.push(rec(
        "A7-BOSONIC",
        "H[A7] = q^-1/((1-q)(q)_inf^4) (sum_{n>=1} (-1)^n (1-3n) q^{(3n^2+n)/2} + sum_{n<=-1} (-1)^n (3n+2) q^{(3n^2+n)/2})",
        &["A-series", "graph", "theta"],
        order_for_nodes(7),
        Check::Equal(vec![
            case(
                "bosonic sum = -1 + (q)_inf D + G + (q)_inf",
                b(|n| bosonic(n + MARGIN)),
                s(|m| {
                    let qi = qi(m);
                    &(&(&(&qi * &d(m)) + &tails(m)) + &qi) - &Series::one(m)
                }),
            ),
            case(
                "graph = bosonic form",
                graph("A7"),
                b(|n| {
                    let m = n + MARGIN;
                    Ok((&(&geo(1, m) * &qi_pow(-4, m)) * &bosonic(m)?).shift_int(-1))
                }),
            ),
        ]),
    ));
    for (id, k, name) in [("SHIFT-3", 3usize, "A7"), ("SHIFT-4", 4, "A8")] {
        v.push(rec(
            id,
            "H[A_{k+4}] = calH[A_k]/(q)_inf^2, calH with (q)_{n1+1} and (q)_{nk+1} at the ends",
            &["A-series", "graph"],
            order_for_nodes(k + 4),
            eq1(
                "graph = shifted sum",
                graph(name),
                s(move |m| &cal_h(k, m) * &qi_pow(-2, m)),
            ),
        ));
    }
    v
}

// ---- proof identities for A7 and A8 ---------------------------------------

/// `sum_{n=lo}^{hi} (-1)^n q^{n(n+1)/2} / ((1 - q^{n-1}) (q)_n)`
fn ee_lhs(lo: i64, hi: i64, m: i64) -> Series {
    let ip = inverse_pochhammers(hi.max(0) as usize, m);
    total(
        m,
        (lo..=hi)
            .filter(|n| n * (n + 1) / 2 <= m)
            .map(|n| (&geo(n - 1, m) * &ip[n as usize]).shift_int(n * (n + 1) / 2).scale_int(sgn(n))),
    )
}

fn finite_lhs(k: i64, m: i64) -> Series {
    let ip = inverse_pochhammers(k as usize, m);
    let first = total(
        m,
        (1..k).map(|n| {
            (&geo(n, m) * &ip[n as usize])
                .shift_int((n * n + n) / 2 + 1)
                .scale_int(-sgn(n))
        }),
    );
    let g1 = geo(1, m);
    let a = &(&g1 * &first) - &(&g1 * &g1).shift_int(2);
    &a - &ee_lhs(2, k, m)
}

fn finite_rhs(k: i64, signed: bool, m: i64) -> Series {
    let t = (&geo(1, m) * &recip(&poch(1, k as u64, m))).shift_int((k * k + k) / 2 + 1);
    if signed {
        t.scale_int(sgn(k))
    } else {
        t
    }
}

/// `sum_{n>=1} q^n (1 + z + ... + z^{n-1}) (1/(q^n)_inf - 1)` at `z = q^k`.
fn id3_rhs(k: i64, m: i64) -> Series {
    total(
        m,
        (1..=m).map(|n| {
            let partial = total(m, (0..n).map(|j| x(k * j, m)));
            let tail = &recip(&poch_inf(n, m)) - &Series::one(m);
            (&partial * &tail).shift_int(n)
        }),
    )
}

fn id3_lhs(k: i64, m: i64) -> Series {
    let ip = inverse_pochhammers(m as usize, m);
    total(
        m,
        (2..=m).map(|n| (&geo(n + k, m) * &ip[n as usize]).shift_int(n)),
    )
}

fn proof_identities() -> Vec<IdentityRecord> {
    let mut v = Vec::new();
    v.push(rec(
        "EE",
        "sum_{n>=2} (-1)^n q^{n(n+1)/2}/((1-q^{n-1})(q)_n) = q/(1-q) sum_{n>=2} q^n/(1-q^n)",
        &["A-series", "proof"],
        PURE,
        eq1(
            "alternating sum = divisor tail",
            s(|m| ee_lhs(2, m + 1, m)),
            s(|m| {
                let t = total(m, (2..=m).map(|n| &x(n, m) * &geo(n, m)));
                (&geo(1, m) * &t).shift_int(1)
            }),
        ),
    ));
    let group = |signed: bool| -> Vec<Case> {
        (2..=7)
            .map(|k| {
                case(
                    format!("k={k}"),
                    s(move |m| finite_lhs(k, m)),
                    s(move |m| finite_rhs(k, signed, m)),
                )
            })
            .collect()
    };
    v.push(noted(
        rec(
            "EE-FINITE",
            "partial sums through k differ by (-1)^k q^{(k^2+k)/2+1}/((1-q)(q)_k), k = 2..7",
            &["A-series", "proof"],
            PURE,
            Check::Variants {
                fixed: vec![],
                candidates: vec![
                    cand("unsigned remainder (printed)", group(false)),
                    cand("remainder with (-1)^k", group(true)),
                ],
            },
        ),
        "the printed remainder omits the sign; it fails for odd k",
    ));
    let mut id3: Vec<Case> = (1..=3)
        .map(|k| {
            case(
                format!("zeta=q^{k}"),
                s(move |m| id3_lhs(k, m)),
                s(move |m| id3_rhs(k, m)),
            )
        })
        .collect();
    id3.push(case(
        "zeta=q^-1",
        s(|m| id3_lhs(-1, m)),
        s(|m| id3_rhs(-1, m)),
    ));
    v.push(rec(
        "ID3",
        "sum_{n>=2} q^n/((1-z q^n)(q)_n) = sum_{n>=1} q^n (1+...+z^{n-1}) (1/(q^n)_inf - 1), z in {q, q^2, q^3, q^-1}",
        &["A-series", "proof"],
        PURE,
        Check::Equal(id3),
    ));
    v.push(rec(
        "F-QINV",
        "sum_{n>=0} q^-n (1/(q)_inf - 1/(q)_n)((q)_n - (q)_inf) = sum_{n>=2} ((-1)^n q^{n(n+1)/2} + q^n)/((1-q^{n-1})(q)_n) = q/(1-q) (D - 1/(q)_inf + 1 + G/(q)_inf)",
        &["A-series", "proof"],
        PURE,
        Check::Equal(vec![
            case("defining sum = split sum", b(|n| Ok(f_qinv_lhs(n))), s(f_qinv_split)),
            case(
                "split sum = closed form",
                s(f_qinv_split),
                s(|m| {
                    let qinv = qi_pow(-1, m);
                    let inner = &(&(&d(m) - &qinv) + &Series::one(m)) + &(&tails(m) * &qinv);
                    (&geo(1, m) * &inner).shift_int(1)
                }),
            ),
        ]),
    ));
    v.push(rec(
        "JM",
        "sum_{n1,n2>=1} q^{n1 n2}/((q)_{n1}(q)_{n2}) = 1 + 2D/(q)_inf - 1/(q)_inf",
        &["A-series", "proof"],
        PURE,
        eq1(
            "double sum = closed form",
            s(|m| {
                let ip = inverse_pochhammers(m as usize, m);
                let mut t = Series::zero(m);
                for a in 1..=m {
                    for c in 1..=m / a {
                        t = &t + &(&ip[a as usize] * &ip[c as usize]).shift_int(a * c);
                    }
                }
                t
            }),
            s(|m| {
                let qinv = qi_pow(-1, m);
                &(&Series::one(m) + &(&d(m) * &qinv).scale_int(2)) - &qinv
            }),
        ),
    ));
    v
}

/// Direct expansion; term `n` starts at `q^{n+2}`, the factors need order `n + N`.
fn f_qinv_lhs(n: i64) -> Series {
    let big = 2 * n + 4;
    let qi = qi(big);
    let qinv = recip(&qi);
    let ps = pochs(n as usize + 2, big);
    total(
        n + 1,
        (0..=n + 1).map(|k| {
            let a = &qinv - &recip(&ps[k as usize]);
            let c = &ps[k as usize] - &qi;
            (&a * &c).shift_int(-k).truncate(Exponent::from_integer(n + 1))
        }),
    )
}

fn f_qinv_split(m: i64) -> Series {
    let ip = inverse_pochhammers(m as usize + 1, m);
    total(
        m,
        (2..=m + 1).map(|n| {
            let num = &x(n * (n + 1) / 2, m).scale_int(sgn(n)) + &x(n, m);
            &(&num * &geo(n - 1, m)) * &ip[n as usize]
        }),
    )
}

// ---- 5-cycles and divisor sums -------------------------------------------

fn divisor_prefactor(sig: fn(i64) -> Series, k: i64, m: i64) -> Series {
    (&sig(m) * &qi_pow(-k, m)).shift_int(-1)
}

fn prefactor_record(
    id: &'static str,
    claim: &'static str,
    graph_name: &'static str,
    r: usize,
    sig: fn(i64) -> Series,
    printed: i64,
    derived: i64,
) -> IdentityRecord {
    let variant = |k: i64| {
        vec![case(
            format!("graph = q^-1 S/(q)_inf^{k}"),
            graph(graph_name),
            s(move |m| divisor_prefactor(sig, k, m)),
        )]
    };
    noted(
        rec(
            id,
            claim,
            &["divisor", "graph", "prefactor"],
            order_for_nodes(r),
            Check::Variants {
                fixed: vec![],
                candidates: vec![
                    cand(&format!("(q)_inf^-{printed} (printed)"), variant(printed)),
                    cand(&format!("(q)_inf^-{derived} (derived)"), variant(derived)),
                ],
            },
        ),
        "two prefactor powers are in circulation; the enumerator decides",
    )
}

/// `sum_{a,b,c>=0} q^{a+b+c+1}/((1-q^{a+b+1})(1-q^{a+b+c+1}))`
fn triple_divisor_sum(m: i64) -> Series {
    let mut acc = Acc::new(m);
    for a in 0..=m {
        for bb in 0..=m - a {
            let u = a + bb + 1;
            for c in 0..=m - a - bb {
                let w = u + c;
                let base = w;
                let mut i = 0;
                while base + i * u <= m {
                    let mut j = 0;
                    while base + i * u + j * w <= m {
                        acc.add(base + i * u + j * w, 1);
                        j += 1;
                    }
                    i += 1;
                }
            }
        }
    }
    acc.done()
}

fn cycles() -> Vec<IdentityRecord> {
    let mut v = vec![
        prefactor_record("C5", "H[C5] = q^-1 sigma_1/(q)_inf^2", "C5", 5, sigma1, 1, 2),
        prefactor_record("GAMMA8", "H[G8] = q^-1 sigma_2/(q)_inf^3", "G8", 8, sigma2, 2, 3),
        prefactor_record("E6", "H[E6] = q^-1 sigma_1/(q)_inf^3", "E6", 6, sigma1, 2, 3),
    ];
    v.push(rec(
        "P42-1",
        "H[C5] = 1/(q)_inf^2 sum_{a,b>=0} q^{a+b}/(1-q^{a+b+1}) = q^-1 sigma_1/(q)_inf^2",
        &["divisor", "graph"],
        50,
        Check::Equal(vec![
            case(
                "graph = double sum",
                graph("C5"),
                s(|m| {
                    let mut acc = Acc::new(m);
                    for a in 0..=m {
                        for c in 0..=m - a {
                            let w = a + c + 1;
                            let mut e = a + c;
                            while e <= m {
                                acc.add(e, 1);
                                e += w;
                            }
                        }
                    }
                    &acc.done() * &qi_pow(-2, m)
                }),
            ),
            case(
                "graph = divisor form",
                graph("C5"),
                s(|m| divisor_prefactor(sigma1, 2, m)),
            ),
        ]),
    ));
    v.push(rec(
        "P42-2",
        "H[C5; b=(2,1,1,1,1)] = 1/((1-q)^2 (q)_inf^2)",
        &["divisor", "graph"],
        50,
        eq1(
            "graph = closed form",
            graph("C5-b2"),
            s(|m| {
                let g = geo(1, m);
                &(&g * &g) * &qi_pow(-2, m)
            }),
        ),
    ));
    let p42_3 = |corrected: bool| {
        vec![case(
            "graph = closed form",
            graph("C5-b3"),
            s(move |m| {
                let t = total(m + 2, (2..=m + 2).map(|n| (&geo(n, m + 2) * &x(n, m + 2)).scale_int(n)));
                let printed = (&t * &qi_pow(-2, m + 2)).shift_int(-2);
                if corrected {
                    let g = geo(1, m);
                    &printed - &(&(&g * &g) * &qi_pow(-2, m))
                } else {
                    printed
                }
            }),
        )]
    };
    v.push(noted(
        rec(
            "P42-3",
            "H[C5; b=(1,2,1,1,2)] = q^-2/(q)_inf^2 sum_{n>=2} n q^n/(1-q^n) - 1/((1-q)^2 (q)_inf^2)",
            &["divisor", "graph"],
            50,
            Check::Variants {
                fixed: vec![],
                candidates: vec![
                    cand("without correction term (printed)", p42_3(false)),
                    cand("with -1/((1-q)^2 (q)_inf^2)", p42_3(true)),
                ],
            },
        ),
        "forced by H[C5] = H[C5;b2] + q H[C5;b3]",
    ));
    let frame: Vec<Case> = (0..=5)
        .flat_map(|a| (0..=5).map(move |c| (a, c)))
        .map(|(a, c)| {
            let spec = GraphSeriesSpec::with_b(Graph::path(2), &[a + 1, c + 1]);
            case(
                format!("a={a},b={c}"),
                graph_spec(spec),
                s(move |m| catalog::framing_closed_form(a, c, m)),
            )
        })
        .collect();
    v.push(rec(
        "FRAME",
        "sum q^{n1 n2 + (a+1) n1 + (b+1) n2}/((q)_{n1}(q)_{n2}) = 1/((q^{b+1})_{a+1} (q^{a+1})_inf), 0 <= a,b <= 5",
        &["framing", "graph"],
        50,
        Check::Equal(frame),
    ));
    v.push(rec(
        "BELL",
        "sum_{n>=1} q^n/(1-q^n)^2 (1/(1-q) + ... + 1/(1-q^n)) = sigma_2",
        &["divisor"],
        PURE,
        eq1(
            "sum = sigma_2",
            s(|m| {
                let mut partial = Series::zero(m);
                total(
                    m,
                    (1..=m).map(|n| {
                        partial = &partial + &geo(n, m);
                        let g = geo(n, m);
                        (&(&g * &g) * &partial).shift_int(n)
                    }),
                )
            }),
            s(sigma2),
        ),
    ));
    v.push(rec(
        "BELL-CURIOUS",
        "sum_{n>=1} q^n/(1-q^n) (1/(1-q) + 2/(1-q^2) + ... + n/(1-q^n)) = sigma_2",
        &["divisor"],
        PURE,
        eq1(
            "sum = sigma_2",
            s(|m| {
                let mut partial = Series::zero(m);
                total(
                    m,
                    (1..=m).map(|n| {
                        partial = &partial + &geo(n, m).scale_int(n);
                        (&geo(n, m) * &partial).shift_int(n)
                    }),
                )
            }),
            s(sigma2),
        ),
    ));
    v.push(rec(
        "STACKS-MIN",
        "sum_{k,l>=1} min(k,l) q^{k+l}/((1-q^k)(1-q^l)) = sum n(n-1) q^n/(1-q^n) - sum n q^{2n}/(1-q^n)^2",
        &["divisor"],
        PURE,
        eq1(
            "double sum = Lambert form",
            s(|m| {
                let mut acc = Acc::new(m);
                for k in 1..=m {
                    for l in 1..=m - k {
                        let mut i = 0;
                        while k + l + i * k <= m {
                            let mut j = 0;
                            while k + l + i * k + j * l <= m {
                                acc.add(k + l + i * k + j * l, k.min(l));
                                j += 1;
                            }
                            i += 1;
                        }
                    }
                }
                acc.done()
            }),
            s(|m| {
                let a = total(m, (1..=m).map(|n| (&x(n, m) * &geo(n, m)).scale_int(n * (n - 1))));
                let c = total(m, (1..=m).map(|n| {
                    let g = geo(n, m);
                    (&g * &g).shift_int(2 * n).scale_int(n)
                }));
                &a - &c
            }),
        ),
    ));
    v.push(rec(
        "DIVISOR-SQUARES",
        "sum_{a,b,c>=0} q^{a+b+c+1}/((1-q^{a+b+1})(1-q^{a+b+c+1})) = sigma_2",
        &["divisor"],
        PURE,
        eq1("triple sum = sigma_2", s(triple_divisor_sum), s(sigma2)),
    ));
    v
}

// ---- D4, D5 and indefinite theta -----------------------------------------

fn d4_cone() -> ConeThetaSpec {
    ConeThetaSpec {
        quad: (qf(1, 2), q(2), qf(3, 2)),
        lin: (qf(3, 2), qf(5, 2)),
        const_exp: q(0),
        weight: Weight {
            terms: vec![(2, 1, 0), (1, 0, 0)],
            alpha: 1,
            beta: 1,
        },
        cones: vec![Cone {
            n: Ray::NonNeg,
            m: Ray::NonNeg,
            sign: 1,
        }],
    }
}

fn d5_cone(sign: i64) -> ConeThetaSpec {
    ConeThetaSpec {
        quad: (qf(1, 2), q(3), q(3)),
        lin: (qf(3, 2), q(4)),
        const_exp: q(0),
        weight: Weight {
            terms: vec![(1, 2, 0), (2, 1, 0), (1, 0, 0)],
            alpha: 1,
            beta: 0,
        },
        cones: vec![
            Cone {
                n: Ray::NonNeg,
                m: Ray::NonNeg,
                sign,
            },
            Cone {
                n: Ray::Neg,
                m: Ray::Neg,
                sign: -sign,
            },
        ],
    }
}

/// `sum (-1)^{n1} (sgn(n1) + sgn(n2 + 1/2)) q^{n1^2/2 + n1/2 + 3 n1 n2 + 3 n2^2 + n2}`
fn te_cone() -> ConeThetaSpec {
    let cone = |n, m, sign| Cone { n, m, sign };
    ConeThetaSpec {
        quad: (qf(1, 2), q(3), q(3)),
        lin: (qf(1, 2), q(1)),
        const_exp: q(0),
        weight: Weight {
            terms: vec![(1, 0, 0)],
            alpha: 1,
            beta: 0,
        },
        cones: vec![
            cone(Ray::Pos, Ray::NonNeg, 2),
            cone(Ray::Zero, Ray::NonNeg, 1),
            cone(Ray::Zero, Ray::Neg, -1),
            cone(Ray::Neg, Ray::Neg, -2),
        ],
    }
}

fn l2(m: i64) -> Series {
    (&Series::one(m) - &catalog::e2(m)).scale(&frac(1, 24))
}

/// `q^-1/(q)_inf^4 (I1 + s (1-E2)/24 + I2)`
fn d4_lerch(sign: i64, m: i64) -> Series {
    let inner = &(&catalog::i1(m) + &l2(m).scale_int(sign)) + &catalog::i2(m);
    (&inner * &qi_pow(-4, m)).shift_int(-1)
}

fn d4_u(m: i64) -> Series {
    (&catalog::u_one(m) * &qi_pow(-3, m)).shift_int(-1)
}

fn d4_theta(n: i64) -> R {
    Ok(&cone_sum(&d4_cone(), n)? * &qi_pow(-4, n))
}

fn d5_lerch_sum(m: i64) -> Series {
    total(
        m,
        (1..=m).filter(|n| n * (n + 1) / 2 <= m).map(|n| {
            let g = geo(n, m);
            let num = &(&Series::one(m) + &x(n, m)) * &(&Series::one(m) - &x(n * n, m));
            (&(&num * &g) * &g).shift_int(n * (n + 1) / 2).scale_int(-sgn(n))
        }),
    )
}

/// Bailey pair relative to `(q^2, q)`.
fn bailey_alpha(j: i64, m: i64) -> Series {
    let one = Series::one(m);
    let f = &(&one + &x(j + 1, m)) * &(&one - &x((j + 1) * (j + 1), m));
    (&f * &geo(2, m)).shift_int(j * (j + 1) / 2).scale_int(sgn(j))
}

fn d_series() -> Vec<IdentityRecord> {
    let mut v = Vec::new();
    v.push(rec(
        "D4-U",
        "H[D4] = q^-1 U(1;q)/(q)_inf^3, U(1;q) = sum_{n>=0} q^{n+1} (q)_n^2",
        &["D-series", "graph"],
        50,
        eq1("graph = U form", graph("D4"), s(d4_u)),
    ));
    let lerch = |sign: i64| vec![case("graph = Lerch form", graph("D4"), s(move |m| d4_lerch(sign, m)))];
    v.push(noted(
        rec(
            "D4-LERCH",
            "H[D4] = q^-1/(q)_inf^4 (I1 - (1-E2)/24 + I2)",
            &["D-series", "graph", "lerch"],
            50,
            Check::Variants {
                fixed: vec![],
                candidates: vec![
                    cand("+(1-E2)/24 (printed)", lerch(1)),
                    cand("-(1-E2)/24 (derived)", lerch(-1)),
                ],
            },
        ),
        "sign of the Eisenstein term",
    ));
    v.push(rec(
        "D4-THETA",
        "H[D4] = 1/(q)_inf^4 sum_{n,m>=0} (-1)^{n+m} (2n+1) q^{n^2/2 + 3m^2/2 + 2nm + 3n/2 + 5m/2}",
        &["D-series", "graph", "theta"],
        50,
        Check::Equal(vec![
            case("graph = cone sum", graph("D4"), b(d4_theta)),
            case("cone sum = U form", b(d4_theta), s(d4_u)),
        ]),
    ));
    v.push(rec(
        "E2-LEMMA",
        "(1-E2)/24 = sum q^n/(1-q^n)^2 = sum_{n>=1} (-1)^{n+1} (1+q^n) q^{n(n+1)/2}/(1-q^n)^2",
        &["D-series", "lerch"],
        PURE,
        Check::Equal(vec![
            case(
                "Lambert = Eisenstein",
                s(|m| catalog::lambert_sum(0, 2, LambertKind::Plain, m).expect("registered")),
                s(l2),
            ),
            case(
                "alternating = Eisenstein",
                s(|m| {
                    catalog::lambert_sum(0, 2, LambertKind::AltTriangular, m).expect("registered")
                }),
                s(l2),
            ),
        ]),
    ));
    v.push(rec(
        "D5-LERCH",
        "H[D5] = q^-1/(q)_inf^3 sum_{n>=1} (-1)^{n+1} (1+q^n) q^{n(n+1)/2} (1-q^{n^2})/(1-q^n)^2",
        &["D-series", "graph", "lerch"],
        50,
        eq1(
            "graph = Lerch form",
            graph("D5"),
            s(|m| (&d5_lerch_sum(m) * &qi_pow(-3, m)).shift_int(-1)),
        ),
    ));
    v.push(rec(
        "D5-REWRITE",
        "H[D5] = 1/(q)_inf^3 sum_{n>=0} q^n (q)_n/(1-q^{n+1})",
        &["D-series", "graph"],
        50,
        eq1(
            "graph = rewritten sum",
            graph("D5"),
            s(|m| {
                let ps = pochs(m as usize, m);
                let t = total(m, (0..=m).map(|n| (&ps[n as usize] * &geo(n + 1, m)).shift_int(n)));
                &t * &qi_pow(-3, m)
            }),
        ),
    ));
    let theta = |sign: i64| {
        vec![case(
            "graph = cone sum",
            graph("D5"),
            b(move |n| Ok(&cone_sum(&d5_cone(sign), n)? * &qi_pow(-5, n))),
        )]
    };
    v.push(noted(
        rec(
            "D5-THETA",
            "H[D5] = 1/(q)_inf^5 (sum_{n,m>=0} - sum_{n,m<0}) (-1)^n (n+1)^2 q^{(n^2+3n)/2 + 3nm + 3m^2 + 4m}",
            &["D-series", "graph", "theta"],
            50,
            Check::Variants {
                fixed: vec![],
                candidates: vec![
                    cand("(-1)^{n+1} (printed)", theta(-1)),
                    cand("(-1)^n (derived)", theta(1)),
                ],
            },
        ),
        "overall sign of the theta weight",
    ));
    let te = |c: i64| {
        vec![case(
            format!("cone sum = {c} (q)_inf^2"),
            b(|n| Ok(cone_sum(&te_cone(), n)?)),
            s(move |m| qi_pow(2, m).scale_int(c)),
        )]
    };
    v.push(noted(
        rec(
            "D5-TE",
            "sum (-1)^{n1} (sgn(n1) + sgn(n2+1/2)) q^{n1^2/2 + n1/2 + 3 n1 n2 + 3 n2^2 + n2} = (q)_inf^2",
            &["D-series", "theta"],
            PURE,
            Check::Variants {
                fixed: vec![],
                candidates: vec![cand("factor 1", te(1)), cand("factor 2", te(2))],
            },
        ),
        "normalization with sgn(0) = 0",
    ));
    let bailey: Vec<Case> = (0..=20)
        .map(|n| {
            case(
                format!("n={n}"),
                s(move |m| recip(&poch(2, n as u64, m))),
                s(move |m| {
                    total(
                        m,
                        (0..=n).map(|j| {
                            let den = &poch(1, (n - j) as u64, m) * &poch(3, (n + j) as u64, m);
                            &bailey_alpha(j, m) * &recip(&den)
                        }),
                    )
                }),
            )
        })
        .collect();
    v.push(rec(
        "BAILEY-D5",
        "beta_n = sum_{j<=n} alpha_j/((q)_{n-j} (q^3;q)_{n+j}), alpha_j = (-1)^j q^{j(j+1)/2} (1+q^{j+1})(1-q^{(j+1)^2})/(1-q^2), beta_n = 1/(q^2;q)_n, n <= 20",
        &["D-series", "bailey"],
        PURE,
        Check::Equal(bailey),
    ));
    v.push(rec(
        "JACOBI",
        "sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2} = (q)_inf^3",
        &["D-series", "theta"],
        PURE,
        eq1(
            "theta sum = cube",
            b(|n| {
                Ok(theta_1d(
                    &WeightedTheta1D {
                        a: qf(1, 2),
                        b: qf(1, 2),
                        c: q(0),
                        poly: vec![(2, 1), (1, 0)],
                        alternating: true,
                        range: Range1D::From(0),
                    },
                    n,
                )?)
            }),
            s(|m| qi_pow(3, m)),
        ),
    ));
    v.push(rec(
        "FHOL-I1",
        "sum_{n!=0} (-1)^{n+1} q^{3n(n+1)/2}/(1-q^n)^2 = sum_{n!=0} (-1)^{n+1} q^{n(3n+1)/2}/(1-q^n)^2",
        &["D-series", "lerch"],
        PURE,
        Check::Equal(vec![
            case(
                "folded F = two-sided F",
                s(catalog::f_hol),
                s(|m| two_sided(m, |k| 3 * k * (k + 1) / 2)),
            ),
            case(
                "folded I1 = two-sided I1",
                s(catalog::i1),
                s(|m| two_sided(m, |k| k * (3 * k + 1) / 2)),
            ),
            case("F = I1", s(catalog::f_hol), s(catalog::i1)),
        ]),
    ));
    v
}

/// `sum_{k!=0} (-1)^{k+1} q^{e(k)}/(1-q^k)^2` with Laurent inversion for `k < 0`.
fn two_sided(m: i64, e: impl Fn(i64) -> i64) -> Series {
    let mut out = Series::zero(m);
    for k in (-m - 1..=m + 1).filter(|&k| k != 0) {
        let base = e(k);
        // valuation of the term: base for k > 0, base + 2|k| for k < 0
        let val = if k > 0 { base } else { base - 2 * k };
        if val > m {
            continue;
        }
        let wide = m + 2 * k.abs() + 2;
        let den = &Series::one(wide) - &x(k, wide);
        let inv = recip(&den);
        let t = (&(&inv * &inv) * &Series::q_pow(base, wide + base.abs())).scale_int(-sgn(k));
        out = &out + &t.truncate(Exponent::from_integer(m));
    }
    out
}

// ---- toolkit ---------------------------------------------------------------

fn toolkit() -> Vec<IdentityRecord> {
    const T: &[&str] = &["toolkit"];
    let ks = [1i64, 2, 3];
    let per_k = |f: &dyn Fn(i64) -> Case| -> Vec<Case> { ks.iter().map(|&k| f(k)).collect() };
    let mut v = Vec::new();
    v.push(rec(
        "EULER",
        "sum_{n>=0} z^n/(q)_n = 1/(z)_inf, z = q^k",
        T,
        PURE,
        Check::Equal(per_k(&|k| {
            case(
                format!("z=q^{k}"),
                s(move |m| {
                    let ip = inverse_pochhammers(m as usize, m);
                    total(m, (0..=m / k).map(|n| ip[n as usize].shift_int(k * n)))
                }),
                s(move |m| recip(&poch_inf(k, m))),
            )
        })),
    ));
    v.push(rec(
        "AF",
        "1/(q)_inf sum_{n>=0} z^n ((q)_n - (q)_inf) = sum_{n>=1} q^n/((1-z q^n)(q)_n), z = q^k",
        T,
        PURE,
        Check::Equal(per_k(&|k| {
            case(
                format!("z=q^{k}"),
                s(move |m| {
                    let (ps, qi) = (pochs(m as usize, m), qi(m));
                    let t = total(m, (0..=m).map(|n| (&ps[n as usize] - &qi).shift_int(k * n)));
                    &t * &qi_pow(-1, m)
                }),
                s(move |m| {
                    let ip = inverse_pochhammers(m as usize, m);
                    total(m, (1..=m).map(|n| (&geo(n + k, m) * &ip[n as usize]).shift_int(n)))
                }),
            )
        })),
    ));
    v.push(rec(
        "GUPTA",
        "sum_{n>=0} z^n ((q)_n - (q)_inf) = sum_{n>=1} q^n (1 + ... + z^{n-1}) (q)_{n-1}, z = q^k",
        T,
        PURE,
        Check::Equal(per_k(&|k| {
            case(
                format!("z=q^{k}"),
                s(move |m| {
                    let (ps, qi) = (pochs(m as usize, m), qi(m));
                    total(m, (0..=m).map(|n| (&ps[n as usize] - &qi).shift_int(k * n)))
                }),
                s(move |m| {
                    let ps = pochs(m as usize, m);
                    total(
                        m,
                        (1..=m).map(|n| {
                            let partial = total(m, (0..n).map(|j| x(k * j, m)));
                            (&partial * &ps[n as usize - 1]).shift_int(n)
                        }),
                    )
                }),
            )
        })),
    ));
    v.push(rec(
        "TAIL",
        "sum_{n>=0} q^{n+1} (q)_n = 1 - (q)_inf",
        T,
        PURE,
        eq1(
            "sum = 1 - (q)_inf",
            s(|m| {
                let ps = pochs(m as usize, m);
                total(m, (0..m).map(|n| ps[n as usize].shift_int(n + 1)))
            }),
            s(|m| &Series::one(m) - &qi(m)),
        ),
    ));
    v.push(rec(
        "AGL",
        "sum_{n>=0} z^n ((q^{n+1})_inf - 1) = sum_{n>=1} (-1)^n q^{n(n+1)/2}/((1-z q^n)(q)_n), z = q^k",
        T,
        PURE,
        Check::Equal(per_k(&|k| {
            case(
                format!("z=q^{k}"),
                s(move |m| {
                    total(
                        m,
                        (0..=m).map(|n| (&poch_inf(n + 1, m) - &Series::one(m)).shift_int(k * n)),
                    )
                }),
                s(move |m| {
                    let ip = inverse_pochhammers(m as usize, m);
                    total(
                        m,
                        (1..=m).filter(|n| n * (n + 1) / 2 <= m).map(|n| {
                            (&geo(n + k, m) * &ip[n as usize])
                                .shift_int(n * (n + 1) / 2)
                                .scale_int(sgn(n))
                        }),
                    )
                }),
            )
        })),
    ));
    v.push(rec(
        "FINE-1",
        "sum_{n>=1} (-1)^{n+1} q^{(n^2+n)/2}/((1-q^n)(q)_n) = D",
        T,
        PURE,
        eq1(
            "sum = D",
            s(|m| {
                let ip = inverse_pochhammers(m as usize, m);
                total(
                    m,
                    (1..=m).filter(|n| n * (n + 1) / 2 <= m).map(|n| {
                        (&geo(n, m) * &ip[n as usize])
                            .shift_int(n * (n + 1) / 2)
                            .scale_int(-sgn(n))
                    }),
                )
            }),
            s(d),
        ),
    ));
    v.push(rec(
        "FINE-2",
        "sum_{n>=0} (1/(q)_inf - 1/(q)_n) = D/(q)_inf",
        T,
        PURE,
        eq1(
            "sum = D/(q)_inf",
            s(|m| {
                let ip = inverse_pochhammers(m as usize, m);
                let qinv = qi_pow(-1, m);
                total(m, (0..=m).map(|n| &qinv - &ip[n as usize]))
            }),
            s(|m| &d(m) * &qi_pow(-1, m)),
        ),
    ));
    let lerch_case = |p: i64, den: i64| {
        case(
            format!("z=q^({p}/{den})"),
            b(move |n| {
                let m = n + MARGIN;
                let a = Exponent::new(p, den);
                let prod = &pochhammer(a, None, m)? * &pochhammer(Exponent::from_integer(1) - a, None, m)?;
                Ok(&qi_pow(2, m) * &recip(&prod))
            }),
            s(move |m| lerch_rhs(p, den, m)),
        )
    };
    v.push(rec(
        "LERCH",
        "(q)_inf^2/((z)_inf (q/z)_inf) = sum_{n in Z} (-1)^n q^{n(n+1)/2}/(1 - z q^n), z in {q^(1/2), q^(1/3), q^(2/3)}",
        T,
        PURE,
        Check::Equal(vec![lerch_case(1, 2), lerch_case(1, 3), lerch_case(2, 3)]),
    ));
    v
}

/// Two-sided Lerch sum at `z = q^{p/den}`, expanded geometrically.
fn lerch_rhs(p: i64, den: i64, m: i64) -> Series {
    let a = Exponent::new(p, den);
    let top = Exponent::from_integer(m);
    let mut acc = FracAcc::new(m);
    let int = Exponent::from_integer;
    for n in 0..=m {
        let base = int(n * (n + 1) / 2);
        if base > top {
            break;
        }
        let step = int(n) + a;
        let mut e = base;
        while e <= top {
            acc.add(e, sgn(n));
            e += step;
        }
    }
    for k in 1..=m + 1 {
        // 1/(1 - q^{a-k}) = -sum_{j>=1} q^{j(k-a)}
        let base = int(k * (k - 1) / 2);
        let step = int(k) - a;
        let mut e = base + step;
        if e > top {
            break;
        }
        while e <= top {
            acc.add(e, -sgn(k));
            e += step;
        }
    }
    acc.done()
}

// ---- quantum modular and false theta ---------------------------------------

fn alt_tails(from: i64, m: i64) -> Series {
    let (ps, qi) = (pochs(m as usize, m), qi(m));
    total(m, (from..=m).map(|n| (&ps[n as usize] - &qi).scale_int(sgn(n))))
}

fn misc() -> Vec<IdentityRecord> {
    let mut v = Vec::new();
    v.push(rec(
        "Z-IDENTITY",
        "G = -H/2 + (q)_inf (1/2 - D), H = sum n (12/n) q^{(n^2-1)/24}",
        &["quantum"],
        PURE,
        eq1(
            "G = weight 3/2 form",
            s(tails),
            s(|m| {
                let h = catalog::h_weight_three_halves(m).scale(&frac(-1, 2));
                let r = &Series::one(m).scale(&frac(1, 2)) - &d(m);
                &h + &(&qi(m) * &r)
            }),
        ),
    ));
    v.push(rec(
        "F1",
        "H[B2] = Theta-/(q)_inf",
        &["B-series", "graph", "false-theta"],
        50,
        eq1(
            "graph = false theta",
            graph("B2"),
            s(|m| &catalog::theta_minus(m) * &qi_pow(-1, m)),
        ),
    ));
    v.push(rec(
        "F2",
        "H[B2; b=(1,2)] = q^-1 (Theta+ - 1)/(q)_inf",
        &["B-series", "graph", "false-theta"],
        50,
        eq1(
            "graph = false theta",
            graph("B2-F2"),
            s(|m| (&(&catalog::theta_plus(m) - &Series::one(m)) * &qi_pow(-1, m)).shift_int(-1)),
        ),
    ));
    v.push(rec(
        "F3",
        "H[B2; b=(2,2)] = q^-2 (Theta- - Theta+)/(q)_inf = q^-2 F1 - q^-1 F2 - q^-2/(q)_inf",
        &["B-series", "graph", "false-theta"],
        50,
        Check::Equal(vec![
            case(
                "graph = false theta",
                graph("B2-F3"),
                s(|m| {
                    let t = &catalog::theta_minus(m) - &catalog::theta_plus(m);
                    (&t * &qi_pow(-1, m)).shift_int(-2)
                }),
            ),
            case(
                "graph = relation",
                graph("B2-F3"),
                b(|n| {
                    let m = n + 2;
                    let f1 = evaluate(&builtin("B2")?, m, Method::Auto)?;
                    let f2 = evaluate(&builtin("B2-F2")?, m, Method::Auto)?;
                    let t = &(&f1 - &f2.shift_int(1)) - &qi_pow(-1, m);
                    Ok(t.shift_int(-2))
                }),
            ),
        ]),
    ));
    let h1_tails = |from: i64| {
        vec![case(
            "graph = alternating tails",
            graph("B3-H1"),
            s(move |m| (&alt_tails(from, m) * &qi_pow(-2, m)).shift_int(-1)),
        )]
    };
    v.push(noted(
        rec(
            "B3-H1",
            "H[B3; b=(1,2,1)] = q^-1/(q)_inf sum_{n>=1} q^n/((1+q^n)(q)_n) = q^-1/(q)_inf^2 sum_{n>=0} (-1)^n ((q)_n - (q)_inf)",
            &["B-series", "graph"],
            50,
            Check::Variants {
                fixed: vec![case(
                    "graph = Euler form",
                    graph("B3-H1"),
                    s(|m| {
                        let ip = inverse_pochhammers(m as usize, m);
                        let t = total(
                            m,
                            (1..=m).map(|n| {
                                let den = &Series::one(m) + &x(n, m);
                                (&recip(&den) * &ip[n as usize]).shift_int(n)
                            }),
                        );
                        (&t * &qi_pow(-1, m)).shift_int(-1)
                    }),
                )],
                candidates: vec![
                    cand("tails from n=1 (printed)", h1_tails(1)),
                    cand("tails from n=0", h1_tails(0)),
                ],
            },
        ),
        "starting index of the alternating sum of tails",
    ));
    v.push(rec(
        "B3-H2",
        "H[B3] = 1/(q)_inf sum q^n/((1-q^{2n+1})(q)_n) = 1/((1-q)(q)_inf) + 1/(q)_inf^2 sum q^n ((q)_{2n} - (q)_inf) = 1/((1-q)(q)_inf^2) (1 - sum (q^{3n+2} (q)_{2n} + q^{3n+3} (q)_{2n+1}))",
        &["B-series", "graph"],
        50,
        Check::Equal(vec![
            case(
                "graph = Euler form",
                graph("B3"),
                s(|m| {
                    let ip = inverse_pochhammers(m as usize, m);
                    let t = total(m, (0..=m).map(|n| (&geo(2 * n + 1, m) * &ip[n as usize]).shift_int(n)));
                    &t * &qi_pow(-1, m)
                }),
            ),
            case(
                "graph = tails form",
                graph("B3"),
                s(|m| {
                    let (ps, qi) = (pochs(2 * m as usize, m), qi(m));
                    let t = total(m, (0..=m).map(|n| (&ps[2 * n as usize] - &qi).shift_int(n)));
                    &(&geo(1, m) * &qi_pow(-1, m)) + &(&t * &qi_pow(-2, m))
                }),
            ),
            case(
                "graph = split form",
                graph("B3"),
                s(|m| {
                    let ps = pochs(2 * m as usize + 1, m);
                    let t = total(
                        m,
                        (0..=m / 3).map(|n| {
                            let n = n as usize;
                            &ps[2 * n].shift_int(3 * n as i64 + 2) + &ps[2 * n + 1].shift_int(3 * n as i64 + 3)
                        }),
                    );
                    &(&geo(1, m) * &qi_pow(-2, m)) * &(&Series::one(m) - &t)
                }),
            ),
            case(
                "tail split",
                s(|m| {
                    let ps = pochs(2 * m as usize + 1, m);
                    total(
                        m,
                        (0..=m / 2).map(|n| {
                            let n = n as usize;
                            &ps[2 * n].shift_int(2 * n as i64 + 1) + &ps[2 * n + 1].shift_int(2 * n as i64 + 2)
                        }),
                    )
                }),
                s(|m| &Series::one(m) - &qi(m)),
            ),
        ]),
    ));
    v.push(rec(
        "SIGMA-REL",
        "sum_{n>=0} (-1)^n ((q)_n - (q)_inf) = sum_{n>=1} q^{2n-1} (q)_{2n-2} = (sigma(q) - (q)_inf)/2",
        &["B-series", "quantum"],
        PURE,
        Check::Equal(vec![
            case(
                "Gupta at z=-1",
                s(|m| alt_tails(0, m)),
                s(|m| {
                    let ps = pochs(2 * m as usize, m);
                    total(m, (1..=m).map(|n| ps[2 * n as usize - 2].shift_int(2 * n - 1)))
                }),
            ),
            case(
                "sigma relation",
                s(|m| alt_tails(0, m)),
                s(|m| (&catalog::sigma_kz(m) - &qi(m)).scale(&frac(1, 2))),
            ),
        ]),
    ));
    v.push(rec(
        "C3-CHI1",
        "H[C3] = chi_1/(q)_inf",
        &["mock", "graph"],
        50,
        eq1("graph = mock theta", graph("C3"), s(|m| &catalog::chi1(m) * &qi_pow(-1, m))),
    ));
    v.push(rec(
        "C3-CHI0",
        "H[C3; b=(2,1,1)] = 1/(q)_inf sum q^n/(q^{n+2})_{n+1} = q^-1 (chi_0 - 1)/(q)_inf",
        &["mock", "graph"],
        50,
        Check::Equal(vec![
            case(
                "graph = Euler form",
                graph("C3-coset"),
                s(|m| {
                    let t = total(m, (0..=m).map(|n| recip(&poch(n + 2, n as u64 + 1, m)).shift_int(n)));
                    &t * &qi_pow(-1, m)
                }),
            ),
            case(
                "graph = mock theta",
                graph("C3-coset"),
                s(|m| (&(&catalog::chi0(m) - &Series::one(m)) * &qi_pow(-1, m)).shift_int(-1)),
            ),
        ]),
    ));
    v
}

// ---- further graphs ----------------------------------------------------------

fn h_double(m: i64) -> Series {
    let ps = pochs(m as usize, m);
    let mut t = Series::zero(m);
    for a in 0..=m {
        for c in 0..=m {
            let e = a * c + a + c;
            if e > m {
                break;
            }
            t = &t + &(&ps[a as usize] * &ps[c as usize]).shift_int(e);
        }
    }
    &t * &qi_pow(-4, m)
}

fn t2_triple(m: i64) -> Series {
    let ps = pochs(m as usize, m);
    let mut t = Series::zero(m);
    for a in 0..=m {
        for c in 0..=m - a {
            for e in 0..=m - a - c {
                let s = a + c + e;
                t = &t + &ps[s as usize].shift_int(s);
            }
        }
    }
    &t * &qi_pow(-4, m)
}

fn t2_quadratic(m: i64) -> Series {
    let ps = pochs(m as usize, m);
    let t = total(m, (0..=m).map(|n| ps[n as usize].shift_int(n).scale_int(n * n + 3 * n + 2)));
    (&t * &qi_pow(-4, m)).scale(&frac(1, 2))
}

fn t2_tails(m: i64) -> Series {
    let (ps, qi) = (pochs(m as usize + 1, m + 1), qi(m + 1));
    let t = total(m + 1, (0..=m + 1).map(|n| (&ps[n as usize] - &qi).scale_int(n + 1)));
    (&t * &qi_pow(-4, m + 1)).shift_int(-1)
}

fn star_sum(l: i64, m: i64) -> Series {
    let ps = pochs(m as usize, m);
    let t = total(m, (0..=m).map(|n| ps[n as usize].pow(l - 1).expect("positive power").shift_int(n)));
    &t * &qi_pow(-l, m)
}

/// `1/(q)_inf sum_{n,m>=1} q^{nm}/(q)_{n+m-1}`
fn c4_sum(m: i64) -> Series {
    let ip = inverse_pochhammers(2 * m as usize + 2, m);
    let mut t = Series::zero(m);
    for a in 1..=m + 1 {
        for c in 1..=(m + 1) / a {
            t = &t + &ip[(a + c - 1) as usize].shift_int(a * c);
        }
    }
    &t * &qi_pow(-1, m)
}

fn graphs() -> Vec<IdentityRecord> {
    let mut v = Vec::new();
    v.push(rec(
        "HGRAPH",
        "H[H] = 1/(q)_inf^4 sum_{m,n>=0} q^{mn+m+n} (q)_m (q)_n",
        &["graph", "open"],
        30,
        eq1("graph = double sum", graph("H"), s(h_double)),
    ));
    let t2 = |name: &'static str, forms: &[(&str, fn(i64) -> Series)]| -> Vec<Case> {
        forms
            .iter()
            .map(|&(label, f)| case(label, graph(name), s(f)))
            .collect()
    };
    let a_forms: &[(&str, fn(i64) -> Series)] = &[("graph = triple sum", t2_triple)];
    let b_forms: &[(&str, fn(i64) -> Series)] = &[
        ("graph = quadratic weight", t2_quadratic),
        ("graph = weighted tails", t2_tails),
    ];
    for (id, claim, forms) in [
        (
            "T2-A",
            "H[T2] = 1/(q)_inf^4 sum_{a,b,c>=0} q^{a+b+c} (q)_{a+b+c}",
            a_forms,
        ),
        (
            "T2-B",
            "H[T2] = 1/(2 (q)_inf^4) sum (n^2+3n+2) q^n (q)_n = q^-1/(q)_inf^4 sum (n+1) ((q)_n - (q)_inf)",
            b_forms,
        ),
    ] {
        v.push(noted(
            rec(
                id,
                claim,
                &["graph", "open"],
                30,
                Check::Variants {
                    fixed: vec![],
                    candidates: vec![
                        cand("exponent as printed", t2("T2", forms)),
                        cand("three arms of length two", t2("T2-tree", forms)),
                    ],
                },
            ),
            "the printed exponent and the drawn graph disagree",
        ));
    }
    for (id, l, name) in [("LSTAR-3", 3i64, "X3"), ("LSTAR-4", 4, "X4"), ("LSTAR-5", 5, "X5")] {
        v.push(rec(
            id,
            "H[X_l] = 1/(q)_inf^l sum_{n>=0} q^n (q)_n^{l-1}",
            &["graph", "open"],
            order_for_nodes(l as usize + 1),
            eq1("graph = star sum", graph(name), s(move |m| star_sum(l, m))),
        ));
    }
    let c4 = |shifted: bool| {
        vec![case(
            "graph = double sum",
            graph("C4"),
            s(move |m| if shifted { c4_sum(m + 1).shift_int(-1) } else { c4_sum(m) }),
        )]
    };
    v.push(noted(
        rec(
            "SEC9",
            "open examples: T2 tails form, X4 star sum, H double sum, H[C4] = q^-1/(q)_inf sum_{n,m>=1} q^{nm}/(q)_{n+m-1}",
            &["graph", "open"],
            30,
            Check::Variants {
                fixed: vec![
                    case("T2 tails form", graph("T2-tree"), s(t2_tails)),
                    case("X4 star sum", graph("X4"), s(|m| star_sum(4, m))),
                    case("H double sum", graph("H"), s(h_double)),
                ],
                candidates: vec![cand("C4 without q^-1 (printed)", c4(false)), cand("C4 with q^-1", c4(true))],
            },
        ),
        "the C4 display needs a q^-1 prefactor",
    ));
    v
}

/// Every registered identity, in a fixed order.
pub fn registry() -> Vec<IdentityRecord> {
    let mut v = a_series();
    v.extend(proof_identities());
    v.extend(cycles());
    v.extend(d_series());
    v.extend(toolkit());
    v.extend(misc());
    v.extend(graphs());
    v
}
