use crate::cache::{cache_key, now_secs, Cache, CacheEntry, Lookup, CODE_VERSION};
use crate::output::Record;
use crate::{CacheOp, Cli, CliError, CoeffArgs, Command, Target};
use coefficients::{fc, genus_probe, sk_zeta, CoeffQuery};
use moonshine::{
    branching_residuals, char_check, denominator_residual, fricke_domination,
    hecke_rademacher_identity, verma_gdim, CharCheckOptions, Hauptmodul,
};
use num_complex::Complex64;
use psl2::arith::{ex_table, exact_divisors};
use psl2::{cusps, genus_gamma0, scaling_element, Family, Group, GroupSpec, Point};
use radsum::{cs_direct, rs_direct, EvalParams};
use std::io::Write;
use std::time::Instant;

type Result<T> = std::result::Result<T, CliError>;

fn parse_group(text: &str) -> Result<GroupSpec> {
    Ok(text.parse::<GroupSpec>()?)
}

fn parse_point(text: &str) -> Result<Point> {
    Ok(text.parse::<Point>()?)
}

fn parse_complex(text: &str) -> Result<Complex64> {
    text.trim()
        .replace(' ', "")
        .parse::<Complex64>()
        .map_err(|_| CliError::Invalid(format!("cannot parse complex number '{text}'")))
}

fn parse_target(t: &Target) -> Result<(GroupSpec, Point, Point)> {
    Ok((
        parse_group(&t.group)?,
        parse_point(&t.cusp_p)?,
        parse_point(&t.cusp_q)?,
    ))
}

pub(crate) fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Vec<Record>> {
    let start = Instant::now();
    let mut records = match &cli.command {
        Command::Coeff { args, no_cache } => {
            let cache = if *no_cache { None } else { open_cache(cli)? };
            vec![coefficient(args, cache.as_ref(), err)?]
        }
        Command::Eval {
            target,
            m,
            s,
            z,
            k,
            conjugate,
            fraction,
        } => vec![eval(
            target,
            *m,
            *s,
            z,
            *k,
            *conjugate,
            fraction.as_deref(),
        )?],
        Command::Zeta {
            target,
            m,
            n,
            s,
            cmax,
        } => {
            let (spec, p, q) = parse_target(target)?;
            let s_val = parse_complex(s)?;
            let v = sk_zeta(&spec, p, q, *m, *n, s_val, *cmax)?;
            vec![Record::new(format!(
                "zeta group={spec} p={p} q={q} m={m} n={n} s={s_val}"
            ))
            .complex(v.value)
            .tail(v.tail_estimate)
            .c_max(v.c_max_used)]
        }
        Command::Hecke {
            n,
            kmax,
            cmax,
            z,
            k,
        } => hecke(*n, *kmax, *cmax, z, *k)?,
        Command::Verma {
            group,
            trunc_p,
            trunc_q,
        } => verma(group, *trunc_p, *trunc_q)?,
        Command::Branch { m, nmax, cmax } => branch(*m, *nmax, *cmax)?,
        Command::Genus {
            group,
            nmax,
            cmax,
            tol,
        } => genus(group, *nmax, *cmax, *tol)?,
        Command::Groups { ex, group } => groups(*ex, group.as_deref())?,
        Command::Char {
            group,
            nmax,
            cmax,
            tol,
        } => {
            let spec = parse_group(group)?;
            let options = CharCheckOptions {
                n_max: *nmax,
                c_max: *cmax,
                tol: *tol,
            };
            let r = char_check(&spec, options)?;
            let flags: Vec<String> = r.per_condition.iter().map(|b| b.to_string()).collect();
            vec![Record::new(format!("char group={spec}"))
                .real(if r.passes { 1.0 } else { 0.0 })
                .c_max(*cmax)
                .exact(r.passes)
                .note(format!(
                    "conditions=[{}] genus_residual={:e}",
                    flags.join(","),
                    r.genus_residual
                ))]
        }
        Command::Cache {
            op,
            group,
            cusp_p,
            cusp_q,
            s,
            m,
            n,
            cmax,
            older_than,
        } => {
            let cache = open_cache(cli)?
                .ok_or_else(|| CliError::Invalid("no cache directory configured".into()))?;
            match op {
                CacheOp::Purge => {
                    let removed = cache.purge(*older_than, now_secs())?;
                    vec![Record::new(format!("cache purge older_than={older_than}"))
                        .real(removed as f64)
                        .exact(removed)]
                }
                CacheOp::Get | CacheOp::Put => {
                    let (m, n) = m.zip(*n).ok_or_else(|| {
                        CliError::Invalid("cache get/put need --m and --n".into())
                    })?;
                    let args = CoeffArgs {
                        target: Target {
                            group: group.clone().unwrap_or_else(|| "PSL2Z".into()),
                            cusp_p: cusp_p.clone(),
                            cusp_q: cusp_q.clone(),
                        },
                        s: *s,
                        m,
                        n,
                        cmax: *cmax,
                    };
                    if *op == CacheOp::Put {
                        vec![coefficient(&args, Some(&cache), err)?]
                    } else {
                        let query = coeff_query(&args)?;
                        let key = cache_key(&describe(&query), CODE_VERSION);
                        match cache.get(&key) {
                            Lookup::Hit(entry) => vec![entry_record(&entry).note("hit")],
                            Lookup::Miss => vec![Record::new(describe(&query)).note("miss")],
                            Lookup::Corrupt(why) => {
                                let _ = writeln!(
                                    err,
                                    "warning: ignoring corrupted cache entry {key}: {why}"
                                );
                                vec![Record::new(describe(&query)).note("miss")]
                            }
                        }
                    }
                }
            }
        }
    };
    if cli.timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for r in &mut records {
            r.elapsed_ms = Some(ms);
        }
    }
    Ok(records)
}

fn open_cache(cli: &Cli) -> Result<Option<Cache>> {
    match &cli.cache_dir {
        Some(dir) => Ok(Some(Cache::open(dir)?)),
        None => Ok(None),
    }
}

fn coeff_query(args: &CoeffArgs) -> Result<CoeffQuery> {
    let (spec, p, q) = parse_target(&args.target)?;
    Ok(CoeffQuery::new(spec, args.s, args.m, args.n, args.cmax).at_cusps(p, q))
}

fn describe(q: &CoeffQuery) -> String {
    format!(
        "coeff group={} p={} q={} s={} m={} n={} c_max={}",
        q.spec, q.p, q.q, q.s, q.m, q.n, q.c_max
    )
}

fn entry_record(e: &CacheEntry) -> Record {
    Record::new(e.query.clone())
        .complex(Complex64::new(e.value_re, e.value_im))
        .tail(e.tail_estimate)
        .c_max(e.c_max)
}

fn coefficient(args: &CoeffArgs, cache: Option<&Cache>, err: &mut dyn Write) -> Result<Record> {
    let query = coeff_query(args)?;
    let text = describe(&query);
    let key = cache_key(&text, CODE_VERSION);
    if let Some(cache) = cache {
        match cache.get(&key) {
            Lookup::Hit(entry) => return Ok(entry_record(&entry)),
            Lookup::Miss => {}
            Lookup::Corrupt(why) => {
                let _ = writeln!(err, "warning: ignoring corrupted cache entry {key}: {why}");
            }
        }
    }
    let v = fc(&query)?;
    let entry = CacheEntry {
        key,
        query: text,
        value_re: v.value.re,
        value_im: v.value.im,
        tail_estimate: v.tail_estimate,
        c_max: v.c_max_used,
        sigma_p: v.sigma_p.to_string(),
        sigma_q: v.sigma_q.to_string(),
        created_at: now_secs(),
    };
    if let Some(cache) = cache {
        cache.put(&entry)?;
    }
    Ok(entry_record(&entry))
}

fn eval(
    target: &Target,
    m: i64,
    s: i64,
    z: &str,
    k: f64,
    conjugate: bool,
    fraction: Option<&str>,
) -> Result<Record> {
    let (spec, p, q) = parse_target(target)?;
    let z = parse_complex(z)?;
    let mut params = EvalParams::new(spec.clone(), m, z, k).at_cusps(p, q);
    params.s = s;
    let mut order = format!("m={m}");
    if let Some(f) = fraction {
        let bad = || CliError::Invalid(format!("cannot parse fraction '{f}'"));
        let (g, h) = f.split_once('/').ok_or_else(bad)?;
        let (g, h) = (
            g.trim().parse().map_err(|_| bad())?,
            h.trim().parse().map_err(|_| bad())?,
        );
        params = params.with_fraction(g, h);
        order = format!("fraction={g}/{h}");
    }
    let sum = if conjugate {
        cs_direct(&params)?
    } else {
        rs_direct(&params)?
    };
    let kind = if conjugate { "conjugate" } else { "direct" };
    let mut r = Record::new(format!(
        "eval {kind} group={spec} p={p} q={q} s={s} {order} z={z} K={k}"
    ))
    .complex(sum.value)
    .tail(sum.half_step_change());
    if sum.warn_slow {
        r = r.note("slow convergence: Im z below threshold");
    }
    Ok(r)
}

fn hecke(n: u64, kmax: i64, cmax: i64, z: &str, k: f64) -> Result<Vec<Record>> {
    let z = parse_complex(z)?;
    let h = hecke_rademacher_identity(n, kmax, cmax, z, k)?;
    let mut out = Vec::new();
    for t in &h.terms {
        out.push(
            Record::new(format!("hecke n={n} k={}", t.k))
                .real(t.computed)
                .tail((t.computed - t.oracle).abs())
                .c_max(cmax)
                .exact(t.oracle)
                .note(format!(
                    "relative={:e} polar_part_exact={}",
                    t.relative, h.polar_part_exact
                )),
        );
    }
    for f in &h.fractional {
        out.push(
            Record::new(format!(
                "hecke n={n} fractional={}/{} z={z} K={k}",
                f.g, f.h
            ))
            .complex(f.value)
            .tail((f.value - f.half_value).norm()),
        );
    }
    Ok(out)
}

fn verma(group: &str, trunc_p: usize, trunc_q: i64) -> Result<Vec<Record>> {
    let spec = parse_group(group)?;
    let hauptmodul = Hauptmodul::for_spec(&spec)?;
    let m = trunc_p as i64;
    let f = hauptmodul.series(m * (trunc_q + 2 * m) + 2)?;
    let bundle = verma_gdim(&f, trunc_p, trunc_q)?;
    let mut out = Vec::new();
    for p in 0..=trunc_p {
        for q in -(p as i64)..=trunc_q {
            let g = bundle.coeff(p, q)?;
            let zc = bundle.z_coeff(p, q)?;
            out.push(Record::new(format!("verma group={spec} gdim p^{p} q^{q}")).exact(g));
            out.push(Record::new(format!("verma group={spec} Z p^{p} q^{q}")).exact(zc));
        }
    }
    if hauptmodul == Hauptmodul::J {
        let zero = denominator_residual(&f, trunc_p, trunc_q)?.is_zero_to_prec();
        let dom = fricke_domination(&f, trunc_p, trunc_q)?;
        out.push(Record::new(format!("verma group={spec} denominator_residual_zero")).exact(zero));
        out.push(Record::new(format!("verma group={spec} fricke_domination")).exact(dom));
    }
    Ok(out)
}

fn branch(m: i64, nmax: i64, cmax: i64) -> Result<Vec<Record>> {
    let report = branching_residuals(m, nmax, cmax)?;
    Ok(report
        .rows
        .iter()
        .map(|r| {
            Record::new(format!("branch m={m} n={}", r.n))
                .real(r.infinity_part + r.zero_part)
                .tail(r.unweighted_residual.abs())
                .c_max(cmax)
                .exact(r.j_side)
                .note(format!(
                    "infinity={} zero={} width={} weighted_residual={} unweighted_residual={}; {}",
                    r.infinity_part,
                    r.zero_part,
                    report.width,
                    r.residual,
                    r.unweighted_residual,
                    report.constant_convention
                ))
        })
        .collect())
}

fn genus(group: &str, nmax: i64, cmax: i64, tol: f64) -> Result<Vec<Record>> {
    let spec = parse_group(group)?;
    let probe = genus_probe(&spec, nmax, cmax, tol)?;
    let oracle = if spec.family == Family::Gamma0 && spec.is_gamma0() {
        format!(" genus_formula={}", genus_gamma0(spec.n))
    } else {
        String::new()
    };
    Ok(probe
        .residuals
        .iter()
        .zip(1..)
        .map(|(r, n)| {
            Record::new(format!("genus group={spec} n={n}"))
                .complex(*r)
                .c_max(cmax)
                .note(format!("genus_zero={}{oracle}", probe.is_genus_zero))
        })
        .collect())
}

fn groups(ex: Option<u64>, group: Option<&str>) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    if let Some(n) = ex {
        if n == 0 {
            return Err(CliError::Invalid("n must be positive".into()));
        }
        let elements = exact_divisors(n);
        let list: Vec<String> = elements.iter().map(u64::to_string).collect();
        for (e, row) in elements.iter().zip(ex_table(n)) {
            let row: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push(
                Record::new(format!("groups ex={n} e={e}"))
                    .exact(e)
                    .note(format!("elements={} row={}", list.join(","), row.join(","))),
            );
        }
    }
    if let Some(text) = group {
        let spec = parse_group(text)?;
        let g = Group::new(spec.clone())?;
        for cusp in cusps(&g) {
            let sigma = scaling_element(&g, &cusp)?.sigma;
            out.push(
                Record::new(format!("groups group={spec} cusp={}", cusp.point))
                    .exact(cusp.width)
                    .note(format!("sigma={sigma}")),
            );
        }
    }
    if out.is_empty() {
        return Err(CliError::Invalid("groups needs --ex or --group".into()));
    }
    Ok(out)
}
