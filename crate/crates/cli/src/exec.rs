//! Statement evaluation against the engine.

use std::collections::{HashMap, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{mpsc, Arc};
use std::time::Duration;

use gkverify::{default_corpus, verify_all, Bounds, ClaimId, TableEntry};
use gradedkernel::cohomology;
use gradedkernel::invariants;
use gradedkernel::module::PresentedModule;
use gradedkernel::resolution;
use gradedkernel::{FieldSpec, Monomial, Polynomial, Ring, RingContext};

use crate::ast::*;
use crate::report::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    /// Overrides the field of every declared ring.
    pub field: Option<FieldSpec>,
    pub seed: u64,
    pub t_max: u32,
    pub window: Option<(i32, i32)>,
    pub max_steps: Option<usize>,
    pub timeout: Option<Duration>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            field: None,
            seed: 0,
            t_max: 6,
            window: None,
            max_steps: None,
            timeout: None,
        }
    }
}

impl Flags {
    fn metadata(&self) -> Metadata {
        Metadata {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            field: self.field.map(|f| f.to_string()),
            seed: self.seed,
            bounds: BoundsMeta {
                t_max: self.t_max,
                window: self.window,
                max_steps: self.max_steps,
                timeout_seconds: self.timeout.map(|d| d.as_secs()),
            },
        }
    }
}

#[derive(Clone)]
struct IdealValue {
    ring: Ring,
    gens: Vec<Polynomial>,
}

#[derive(Clone)]
struct ModuleValue {
    module: PresentedModule,
    /// The defining ideal for `quotient` modules.
    ideal: Option<Vec<Polynomial>>,
}

#[derive(Clone, Default)]
struct Env {
    rings: HashMap<String, Ring>,
    ideals: HashMap<String, IdealValue>,
    modules: HashMap<String, ModuleValue>,
}

type EResult<T> = Result<T, String>;

fn scalar_u64(field: &FieldSpec, v: u64) -> gradedkernel::Scalar {
    let hi = field.from_i64((v >> 32) as i64);
    let lo = field.from_i64((v & 0xffff_ffff) as i64);
    field.add(&field.mul(&hi, &field.from_i64(1 << 32)), &lo)
}

fn max_exponents(p: &Polynomial, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for (m, _) in p.terms() {
        for (k, e) in m.exponents().iter().enumerate() {
            out[k] = out[k].max(*e as u32);
        }
    }
    out
}

fn checked_mul(field: &FieldSpec, n: usize, a: &Polynomial, b: &Polynomial) -> EResult<Polynomial> {
    let (ea, eb) = (max_exponents(a, n), max_exponents(b, n));
    if ea.iter().zip(&eb).any(|(x, y)| x + y > u16::MAX as u32) {
        return Err(gradedkernel::AlgebraError::ExponentOverflow.to_string());
    }
    Ok(a.mul(field, b))
}

fn eval(e: &Expr, field: &FieldSpec, n: usize) -> EResult<Polynomial> {
    Ok(match e {
        Expr::Int(v) => Polynomial::constant(field, scalar_u64(field, *v), n),
        Expr::Var(k) => Polynomial::var(field, n, *k),
        Expr::Neg(a) => eval(a, field, n)?.neg(field),
        Expr::Sum(terms) => {
            let mut acc = Polynomial::zero();
            for (negate, t) in terms {
                let v = eval(t, field, n)?;
                acc = if *negate { acc.sub(field, &v) } else { acc.add(field, &v) };
            }
            acc
        }
        Expr::Product(factors) => {
            let mut acc = Polynomial::constant(field, field.one(), n);
            for f in factors {
                acc = checked_mul(field, n, &acc, &eval(f, field, n)?)?;
            }
            acc
        }
        Expr::Pow(base, k) => {
            let mut base = eval(base, field, n)?;
            let mut k = *k;
            let mut acc = Polynomial::constant(field, field.one(), n);
            while k > 0 {
                if k & 1 == 1 {
                    acc = checked_mul(field, n, &acc, &base)?;
                }
                k >>= 1;
                if k > 0 {
                    base = checked_mul(field, n, &base, &base)?;
                }
            }
            acc
        }
    })
}

/// Generator degrees making every column of `rows` homogeneous, with the
/// first generator of each connected block in degree 0.
fn infer_degrees(rows: &[Vec<Polynomial>]) -> EResult<Vec<i32>> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    let mut entry_deg = vec![vec![None; nc]; nr];
    for (r, row) in rows.iter().enumerate() {
        for (c, f) in row.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            match f.is_homogeneous() {
                (true, Some(d)) => entry_deg[r][c] = Some(d as i32),
                _ => return Err(format!("matrix entry ({}, {}) is not homogeneous", r + 1, c + 1)),
            }
        }
    }
    // nodes 0..nr are rows, nr..nr+nc columns; column degree = row degree + entry degree
    let mut deg: Vec<Option<i32>> = vec![None; nr + nc];
    for start in 0..nr {
        if deg[start].is_some() {
            continue;
        }
        deg[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let dv = deg[v].unwrap();
            let edges: Vec<(usize, i32)> = if v < nr {
                (0..nc).filter_map(|c| entry_deg[v][c].map(|d| (nr + c, dv + d))).collect()
            } else {
                let c = v - nr;
                (0..nr).filter_map(|r| entry_deg[r][c].map(|d| (r, dv - d))).collect()
            };
            for (w, dw) in edges {
                match deg[w] {
                    None => {
                        deg[w] = Some(dw);
                        queue.push_back(w);
                    }
                    Some(x) if x != dw => {
                        return Err("no choice of generator degrees makes the matrix homogeneous".into());
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(deg[..nr].iter().map(|d| d.unwrap()).collect())
}

fn entries_i(map: impl IntoIterator<Item = (i64, i64, u64)>) -> Vec<TableEntry> {
    map.into_iter()
        .filter(|e| e.2 != 0)
        .map(|(i, j, v)| TableEntry { i, j, dim: v })
        .collect()
}

fn hilbert_data(m: &PresentedModule) -> HilbertData {
    let series = m.hilbert_series();
    let (num, exp) = series.reduced();
    let lo = m.degrees().iter().copied().min().unwrap_or(0);
    let hi = lo + 10;
    HilbertData {
        numerator: num
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .map(|(degree, value)| Coefficient { degree, value })
            .collect(),
        denominator_exponent: exp,
        dimension: series.dimension(),
        values: m
            .hilbert_function(lo, hi)
            .into_iter()
            .map(|(degree, value)| Coefficient { degree, value })
            .collect(),
    }
}

fn module_data(m: &PresentedModule) -> EResult<ModuleData> {
    let m = resolution::minimal_presentation(m).map_err(|e| e.to_string())?;
    Ok(ModuleData {
        generator_degrees: m.degrees().to_vec(),
        relations: m.format_relations(),
        hilbert: hilbert_data(&m),
    })
}

struct Runner<'a> {
    env: &'a Env,
    flags: &'a Flags,
}

impl Runner<'_> {
    fn module(&self, name: &str) -> &ModuleValue {
        &self.env.modules[name]
    }

    /// The ring `S/I` named by a ring, an ideal or a quotient module.
    fn quotient_ring(&self, name: &str) -> EResult<Ring> {
        let (ring, gens) = if let Some(r) = self.env.rings.get(name) {
            (r.clone(), Vec::new())
        } else if let Some(i) = self.env.ideals.get(name) {
            (i.ring.clone(), i.gens.clone())
        } else {
            let m = self.module(name);
            (m.module.ring().clone(), m.ideal.clone().unwrap_or_default())
        };
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            Ok(ring)
        } else {
            ring.quotient_ring(&gens).map_err(|e| e.to_string())
        }
    }

    fn run(&self, cmd: &Command) -> EResult<CommandOutput> {
        let e = |x: gradedkernel::AlgebraError| x.to_string();
        Ok(match cmd {
            Command::Betti(name) => {
                let m = &self.module(name).module;
                let len = self.flags.max_steps.unwrap_or_else(|| resolution::default_max_length(m));
                let table = resolution::betti_table(m, len).map_err(e)?;
                CommandOutput::Betti {
                    module: name.clone(),
                    table: entries_i(table.entries.iter().map(|(&(i, j), &v)| (i as i64, j as i64, v))),
                    totals: table.totals(),
                    truncated: table.truncated,
                }
            }
            Command::Depth(name) => CommandOutput::Depth {
                module: name.clone(),
                value: invariants::depth(&self.module(name).module).map_err(e)?,
            },
            Command::Dim(name) => CommandOutput::Dim {
                module: name.clone(),
                value: self.module(name).module.krull_dim(),
            },
            Command::Hilbert(name) => CommandOutput::Hilbert {
                module: name.clone(),
                hilbert: hilbert_data(&self.module(name).module),
            },
            Command::LocalCoh(name) => {
                let m = &self.module(name).module;
                let (lo, hi) = match self.flags.window {
                    Some(w) => w,
                    None => cohomology::default_window(m).map_err(e)?,
                };
                let table = cohomology::local_cohomology_table(m, lo, hi).map_err(e)?;
                CommandOutput::Localcoh {
                    module: name.clone(),
                    nvars: m.nvars(),
                    window: (lo, hi),
                    table: entries_i(table.dims.iter().map(|(&(i, j), &v)| (i as i64, j as i64, v))),
                }
            }
            Command::Ext(a, b, i) => {
                let x = invariants::ext_presentation(&self.module(a).module, &self.module(b).module, *i).map_err(e)?;
                CommandOutput::Ext {
                    first: a.clone(),
                    second: b.clone(),
                    index: *i,
                    module: module_data(&x)?,
                }
            }
            Command::Hom(a, b) => {
                let x = invariants::hom_presentation(&self.module(a).module, &self.module(b).module).map_err(e)?;
                CommandOutput::Hom {
                    first: a.clone(),
                    second: b.clone(),
                    module: module_data(&x)?,
                }
            }
            Command::Canonical(name) => {
                let r = self.quotient_ring(name)?;
                CommandOutput::Canonical {
                    ring: name.clone(),
                    module: module_data(&invariants::canonical_module(&r).map_err(e)?)?,
                }
            }
            Command::Lyubeznik(name) => {
                let r = self.quotient_ring(name)?;
                let bound = self.flags.max_steps.unwrap_or(r.nvars());
                let t = cohomology::lyubeznik_table(&r, bound).map_err(e)?;
                CommandOutput::Lyubeznik {
                    ring: name.clone(),
                    i_bound: t.i_bound,
                    truncated: t.truncated,
                    table: entries_i(t.values.iter().map(|(&(i, j), &v)| (i as i64, j as i64, v))),
                }
            }
            Command::Ass(name) => {
                let m = &self.module(name).module;
                let names = m.ring().vars().to_vec();
                let primes = invariants::associated_primes_monomial(m).map_err(e)?;
                CommandOutput::Ass {
                    module: name.clone(),
                    primes: primes
                        .primes
                        .iter()
                        .map(|p| PrimeData {
                            generators: p.variables.iter().map(|k| names[*k].clone()).collect(),
                            witness: Monomial::new(&p.witness).format_with(&names),
                            dim: p.dim,
                        })
                        .collect(),
                }
            }
            Command::Formal { module, ideal, t } => {
                let m = &self.module(module).module;
                let gens = &self.env.ideals[ideal].gens;
                let (lo, hi) = self
                    .flags
                    .window
                    .unwrap_or_else(|| cohomology::default_tower_window(m, gens, *t));
                let tower = cohomology::formal_tower(m, gens, *t, lo, hi).map_err(e)?;
                CommandOutput::Formal {
                    module: module.clone(),
                    ideal: ideal.clone(),
                    nvars: m.nvars(),
                    window: (lo, hi),
                    stages: tower
                        .stages
                        .iter()
                        .map(|s| StageData {
                            t: s.t,
                            length: s.length,
                            table: entries_i(s.table.dims.iter().map(|(&(i, j), &v)| (i as i64, j as i64, v))),
                        })
                        .collect(),
                    stabilization: tower
                        .stabilization
                        .iter()
                        .map(|(&(i, j), &from_stage)| StabilizationData {
                            i: i as i64,
                            j: j as i64,
                            from_stage,
                        })
                        .collect(),
                }
            }
            Command::Verify(claim) => {
                let field = self.flags.field.unwrap_or_default();
                let cases = default_corpus(self.flags.seed, field);
                let bounds = Bounds {
                    t_max: self.flags.t_max,
                    window: self.flags.window,
                    max_length: self.flags.max_steps.unwrap_or(Bounds::default().max_length),
                };
                let claims: Vec<ClaimId> = match claim {
                    Some(c) => vec![*c],
                    None => ClaimId::ALL.to_vec(),
                };
                CommandOutput::Verify {
                    report: Box::new(verify_all(&cases, &claims, bounds)),
                }
            }
        })
    }
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

/// Runs one command on a worker thread, honouring the timeout and turning
/// panics into errors.
fn run_guarded(env: Arc<Env>, flags: &Flags, cmd: Command) -> EResult<CommandOutput> {
    let (tx, rx) = mpsc::channel();
    let worker_flags = flags.clone();
    let spawned = std::thread::Builder::new()
        .stack_size(64 << 20)
        .spawn(move || {
            let runner = Runner {
                env: &env,
                flags: &worker_flags,
            };
            let out = catch_unwind(AssertUnwindSafe(|| runner.run(&cmd)));
            let _ = tx.send(out.unwrap_or_else(|p| Err(format!("internal error: {}", panic_message(p)))));
        });
    if let Err(e) = spawned {
        return Err(format!("could not start worker: {e}"));
    }
    match flags.timeout {
        Some(d) => match rx.recv_timeout(d) {
            Ok(r) => r,
            Err(mpsc::RecvTimeoutError::Timeout) => Err(format!("timed out after {} s", d.as_secs_f64())),
            Err(mpsc::RecvTimeoutError::Disconnected) => Err("worker exited without a result".into()),
        },
        None => rx.recv().unwrap_or_else(|_| Err("worker exited without a result".into())),
    }
}

fn declare(env: &mut Env, flags: &Flags, kind: &StatementKind) -> EResult<()> {
    match kind {
        StatementKind::Ring { name, field, vars } => {
            let f = match (flags.field, field) {
                (Some(f), _) => f,
                (None, FieldDecl::Rationals) => FieldSpec::Rationals,
                (None, FieldDecl::Prime(p)) => FieldSpec::prime(*p).map_err(|e| e.to_string())?,
            };
            env.rings.insert(name.clone(), RingContext::with_names(vars.clone(), f));
        }
        StatementKind::Ideal { name, ring, gens } => {
            let r = env.rings[ring].clone();
            let gens = gens
                .iter()
                .map(|g| eval(g, r.field(), r.nvars()))
                .collect::<EResult<Vec<_>>>()?;
            for (k, g) in gens.iter().enumerate() {
                if !g.is_homogeneous().0 {
                    return Err(format!("generator {} of {name} is not homogeneous", k + 1));
                }
            }
            env.ideals.insert(name.clone(), IdealValue { ring: r, gens });
        }
        StatementKind::Module { name, ring, def } => {
            let value = match def {
                ModuleDef::Quotient(ideal) => {
                    let i = &env.ideals[ideal];
                    let gens: Vec<Polynomial> = i.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
                    ModuleValue {
                        module: PresentedModule::cyclic(i.ring.clone(), &gens).map_err(|e| e.to_string())?,
                        ideal: Some(gens),
                    }
                }
                ModuleDef::Coker(rows) => {
                    let r = env.rings[ring].clone();
                    let rows = rows
                        .iter()
                        .map(|row| row.iter().map(|x| eval(x, r.field(), r.nvars())).collect())
                        .collect::<EResult<Vec<Vec<Polynomial>>>>()?;
                    let degrees = infer_degrees(&rows)?;
                    let ncols = rows.first().map_or(0, |r| r.len());
                    let relations: Vec<Vec<Polynomial>> = (0..ncols)
                        .map(|c| rows.iter().map(|row| row[c].clone()).collect::<Vec<_>>())
                        .filter(|col| col.iter().any(|f| !f.is_zero()))
                        .collect();
                    ModuleValue {
                        module: PresentedModule::new(r, degrees, relations).map_err(|e| e.to_string())?,
                        ideal: None,
                    }
                }
            };
            env.modules.insert(name.clone(), value);
        }
        StatementKind::Command(_) => unreachable!(),
    }
    Ok(())
}

/// Evaluates the statements in order. Execution stops at the first
/// failing statement, which is recorded in the report.
pub fn execute(script: &SessionScript, flags: &Flags) -> ReportDocument {
    let mut env = Arc::new(Env::default());
    let mut results = Vec::new();
    let mut error = None;
    for st in &script.statements {
        let outcome = match &st.kind {
            StatementKind::Command(cmd) => run_guarded(env.clone(), flags, cmd.clone()).map(Some),
            decl => {
                let env = Arc::make_mut(&mut env);
                catch_unwind(AssertUnwindSafe(|| declare(env, flags, decl)))
                    .unwrap_or_else(|p| Err(format!("internal error: {}", panic_message(p))))
                    .map(|_| None)
            }
        };
        match outcome {
            Ok(Some(output)) => results.push(StatementResult {
                location: st.location,
                statement: st.text.clone(),
                output,
            }),
            Ok(None) => {}
            Err(message) => {
                error = Some(EngineFailure {
                    location: st.location,
                    statement: st.text.clone(),
                    message,
                });
                break;
            }
        }
    }
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        metadata: flags.metadata(),
        results,
        error,
    }
}
