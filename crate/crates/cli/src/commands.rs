use std::path::Path;
use std::sync::Arc;

use serde_json::json;
use sodhh::catalog;
use sodhh::complexes::{global_dimension, minimal_resolution, Graded, ProjComplex};
use sodhh::derived::{
    bdi_check, dual_collection, is_exceptional_collection, sod_project, Direction,
    ExceptionalCollection,
};
use sodhh::hochschild::{
    generalized_hoh, hh_cohomology, hh_homology, hh_with_coefficients, homology_via_serre_dual,
    Support,
};
use sodhh::kernels::{
    additivity_check, fullness_certificate, les_check, orthogonality_report, projection_kernels,
    Kernel, Kernels, Verdict,
};
use sodhh::module::{Enveloping, Module};
use sodhh::{Algebra, Field, Q};

use crate::document::{parse_bimodule_file, QuiverDocument};
use crate::report::{Entry, Grid, Profile, Report};
use crate::{
    CatalogCommand, CliError, CollectionCommand, Command, DirArg, GlobalArgs, KernelCommand,
    Source, SupportArg,
};

type Out = Result<(Report, bool), CliError>;

fn graded(g: &Graded) -> String {
    if g.values().all(|&d| d == 0) {
        return "-".into();
    }
    g.iter()
        .filter(|(_, &d)| d > 0)
        .map(|(n, d)| format!("{n}:{d}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn class(c: &[i64]) -> String {
    format!("{c:?}")
}

fn object_row<F: Field>(k: usize, x: &ProjComplex<F>) -> Vec<String> {
    let mult: Vec<String> = x
        .multiplicities()
        .iter()
        .map(|(p, v)| format!("{p}:{v:?}"))
        .collect();
    vec![
        k.to_string(),
        class(&x.k0_class()),
        graded(&x.cohomology()),
        mult.join(" "),
    ]
}

fn objects_grid<F: Field>(objs: &[ProjComplex<F>]) -> Grid {
    let mut g = Grid::new(["i", "K0 class", "cohomology", "terms"]);
    for (k, x) in objs.iter().enumerate() {
        g.row(object_row(k + 1, x));
    }
    g
}

fn ext_grid(table: &[Vec<Graded>], label: &str) -> Grid {
    let m = table.len();
    let mut g = Grid::new(std::iter::once(label.to_string()).chain((1..=m).map(|j| j.to_string())));
    for (i, row) in table.iter().enumerate() {
        g.row(std::iter::once((i + 1).to_string()).chain(row.iter().map(graded)));
    }
    g
}

fn load<F: Field>(src: &Source) -> Result<Algebra<F>, CliError> {
    match src {
        Source::Catalog(name) => catalog::algebra::<F>(name)
            .ok_or_else(|| CliError::Input(format!("unknown catalog algebra {name:?}"))),
        Source::File(doc) => doc.build::<F>(),
    }
}

fn summary<F: Field>(a: &Arc<Algebra<F>>, n_max: usize) -> Entry {
    let gl = match global_dimension(a, n_max) {
        Some(d) => json!(d),
        None => json!(format!("> {n_max}")),
    };
    Entry::Section(vec![
        ("name".into(), Entry::text(a.name())),
        ("field".into(), Entry::text(F::spec().to_string())),
        ("dim".into(), a.dim().into()),
        ("vertices".into(), a.num_vertices().into()),
        ("center".into(), a.center_dim().into()),
        ("cocenter".into(), a.cocenter_dim().into()),
        (
            "radical nilpotency index".into(),
            a.nilpotency_index().into(),
        ),
        ("global dimension".into(), Entry::Value(gl)),
    ])
}

fn vertex<F: Field>(a: &Algebra<F>, name: &str) -> Result<usize, CliError> {
    a.vertex_names()
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| {
            CliError::Input(format!(
                "unknown vertex {name:?}; vertices: {}",
                a.vertex_names().join(", ")
            ))
        })
}

fn projectives<F: Field>(a: &Arc<Algebra<F>>) -> Result<ExceptionalCollection<F>, CliError> {
    Ok(ExceptionalCollection::projectives(a)?)
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Info => "info".into(),
        Command::Cohomology => "cohomology".into(),
        Command::Homology => "homology".into(),
        Command::Coeffs { bimodule } => format!("coeffs --bimodule {bimodule}"),
        Command::Generalized { support, coeff } => {
            format!(
                "generalized --support {} --coeff {coeff}",
                format!("{support:?}").to_lowercase()
            )
        }
        Command::SerreCheck => "serre-check".into(),
        Command::Collection { action } => match action {
            CollectionCommand::Check => "collection check".into(),
            CollectionCommand::Mutate { index, dir } => {
                format!(
                    "collection mutate --index {index} --dir {}",
                    format!("{dir:?}").to_lowercase()
                )
            }
            CollectionCommand::Dual => "collection dual".into(),
            CollectionCommand::Project { object } => {
                format!("collection project --object {object}")
            }
        },
        Command::Kernels { action } => format!("kernels {}", format!("{action:?}").to_lowercase()),
        Command::LesCheck => "les-check".into(),
        Command::Fullness { subset } => match subset {
            Some(s) => format!(
                "fullness --subset {}",
                s.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            None => "fullness".into(),
        },
        Command::Catalog { .. } => "catalog".into(),
    }
}

pub fn run<F: Field>(cmd: &Command, g: &GlobalArgs, src: &Source) -> Out {
    let a = Arc::new(load::<F>(src)?);
    let n = g.max_degree;
    let mut r = Report::new(command_name(cmd));
    r.push("algebra", summary(&a, n));
    let ok = match cmd {
        Command::Info => {
            let labels: Vec<String> = a.basis().iter().map(|b| b.label.clone()).collect();
            r.push("vertex names", Entry::Value(json!(a.vertex_names())));
            r.push("basis", Entry::Value(json!(labels)));
            r.push("fingerprint", Entry::text(a.fingerprint()));
            true
        }
        Command::Cohomology => {
            r.push("HH^*", Profile::from(&hh_cohomology(&a, n)));
            true
        }
        Command::Homology => {
            r.push("HH_*", Profile::from(&hh_homology(&a, n)));
            true
        }
        Command::Coeffs { bimodule } => coeffs(&a, bimodule, n, &mut r)?,
        Command::Generalized { support, coeff } => generalized(&a, *support, coeff, n, &mut r)?,
        Command::SerreCheck => {
            let h = hh_homology(&a, n);
            let e = homology_via_serre_dual(&a, n);
            let agree = h.dims == e.dims;
            r.push("HH_*", Profile::from(&h));
            r.push("Ext_(A^e)(A, DA)", Profile::from(&e));
            r.push("agree", agree);
            agree
        }
        Command::Collection { action } => collection(&a, action, &mut r)?,
        Command::Kernels { action } => kernels(&a, action, n, &mut r)?,
        Command::LesCheck => les::<F>(src, n, &mut r)?,
        Command::Fullness { subset } => fullness(&a, subset.as_deref(), n, &mut r)?,
        Command::Catalog { .. } => unreachable!("handled before loading an algebra"),
    };
    Ok((r, ok))
}

fn coeffs<F: Field>(
    a: &Arc<Algebra<F>>,
    spec: &str,
    n: usize,
    r: &mut Report,
) -> Result<bool, CliError> {
    let env = Enveloping::new(a.clone());
    let m = match spec {
        "diagonal" => env.diagonal(),
        "dual" => env.dual(),
        path => parse_bimodule_file(Path::new(path))?.build(&env)?,
    };
    r.push("bimodule dim", m.dim());
    r.push(
        "HH^*(A, M)",
        Profile::from(&hh_with_coefficients(&env, &m, n)?),
    );
    Ok(true)
}

fn kernel_from_spec<F: Field>(
    calc: &Kernels<F>,
    spec: &str,
) -> Result<Option<ProjComplex<F>>, CliError> {
    let a = calc.algebra().clone();
    if spec == "diagonal" {
        return Ok(None);
    }
    let bad = || {
        CliError::Input(format!(
            "--coeff: expected diagonal, projection:<i> or decomposable:<v>,<w>, got {spec:?}"
        ))
    };
    let k = if let Some(i) = spec.strip_prefix("projection:") {
        let i: usize = i.parse().map_err(|_| bad())?;
        let coll = projectives(&a)?;
        if i == 0 || i > coll.len() {
            return Err(CliError::Input(format!(
                "--coeff: index {i} outside 1..={}",
                coll.len()
            )));
        }
        projection_kernels(calc, &coll, true)?.swap_remove(i - 1)
    } else if let Some(pair) = spec.strip_prefix("decomposable:") {
        let (v, w) = pair.split_once(',').ok_or_else(bad)?;
        let (v, w) = (vertex(&a, v)?, vertex(&a, w)?);
        calc.decomposable(
            ProjComplex::projective(a.clone(), v),
            ProjComplex::projective(a, w),
        )?
    } else {
        return Err(bad());
    };
    Ok(Some(calc.resolve(&k)?))
}

fn generalized<F: Field>(
    a: &Arc<Algebra<F>>,
    support: SupportArg,
    coeff: &str,
    n: usize,
    r: &mut Report,
) -> Result<bool, CliError> {
    let calc = Kernels::new(a.clone());
    let e = kernel_from_spec(&calc, coeff)?;
    let t = match support {
        SupportArg::Diagonal => Support::Diagonal,
        SupportArg::Serre => Support::Serre,
    };
    let p = generalized_hoh(&calc.env, e.as_ref(), &t, n)?;
    r.push("HOH_T(E)", Profile::from(&p));
    Ok(true)
}

fn collection<F: Field>(
    a: &Arc<Algebra<F>>,
    action: &CollectionCommand,
    r: &mut Report,
) -> Result<bool, CliError> {
    match action {
        CollectionCommand::Check => {
            let objs: Vec<ProjComplex<F>> = (0..a.num_vertices())
                .rev()
                .map(|v| ProjComplex::projective(a.clone(), v))
                .collect();
            let check = is_exceptional_collection(&objs)?;
            r.push("objects", objects_grid(&objs));
            r.push("Ext(E_i, E_j)", ext_grid(&check.table, "i\\j"));
            r.push(
                "violations",
                Entry::Value(json!(check
                    .violations
                    .iter()
                    .map(|v| format!("{v:?}"))
                    .collect::<Vec<_>>())),
            );
            r.push("exceptional", check.ok());
            Ok(check.ok())
        }
        CollectionCommand::Mutate { index, dir } => {
            let coll = projectives(a)?;
            let d = match dir {
                DirArg::Left => Direction::Left,
                DirArg::Right => Direction::Right,
            };
            let m = coll.mutate(*index, d)?;
            let table: Vec<Vec<Graded>> = (1..=m.len())
                .map(|i| (1..=m.len()).map(|j| m.ext(i, j).clone()).collect())
                .collect();
            r.push("objects", objects_grid(m.objects()));
            r.push("Ext(E_i, E_j)", ext_grid(&table, "i\\j"));
            r.push("exceptional", true);
            Ok(true)
        }
        CollectionCommand::Dual => {
            let coll = projectives(a)?;
            let dual = dual_collection(&coll)?;
            let mut objs = objects_grid(&dual.objects);
            objs.columns.push("shift".into());
            for (row, s) in objs.rows.iter_mut().zip(&dual.shifts) {
                row.push(s.to_string());
            }
            r.push("dual objects", objs);
            r.push("Ext(F_j, E_i)", ext_grid(&dual.table, "j\\i"));
            let delta = dual.delta_table_holds();
            r.push("delta table holds", delta);
            let mut bdi = Vec::new();
            for i in 1..=coll.len() {
                bdi.push(bdi_check(&coll, i)?);
            }
            r.push("bdi", Entry::Value(json!(bdi)));
            Ok(delta && bdi.iter().all(|&b| b))
        }
        CollectionCommand::Project { object } => {
            let coll = projectives(a)?;
            let (kind, name) = object.split_once(':').ok_or_else(|| {
                CliError::Input(format!(
                    "--object: expected projective:<v> or simple:<v>, got {object:?}"
                ))
            })?;
            let v = vertex(a, name)?;
            let x = match kind {
                "projective" => ProjComplex::projective(a.clone(), v),
                "simple" => {
                    let res =
                        minimal_resolution(&Module::simple(a.clone(), v), 2 * a.num_vertices() + 2);
                    if !res.complete {
                        return Err(CliError::Verification(format!(
                            "simple at {name} has no finite resolution"
                        )));
                    }
                    res.complex
                }
                _ => return Err(CliError::Input(format!("--object: unknown kind {kind:?}"))),
            };
            let tower = sod_project(&x, &coll)?;
            r.push("object", objects_grid(std::slice::from_ref(&x)));
            r.push("factors", objects_grid(&tower.factors));
            let k0 = tower.k0_sum_holds();
            let member = tower.membership_holds(&coll)?;
            r.push("K0 sum holds", k0);
            r.push("membership holds", member);
            Ok(k0 && member)
        }
    }
}

fn kernels<F: Field>(
    a: &Arc<Algebra<F>>,
    action: &KernelCommand,
    n: usize,
    r: &mut Report,
) -> Result<bool, CliError> {
    let calc = Kernels::new(a.clone());
    let coll = projectives(a)?;
    match action {
        KernelCommand::Build => {
            let ps = projection_kernels(&calc, &coll, true)?;
            let mut g = Grid::new(["i", "shape", "K0 class"]);
            let mut sum = vec![0i64; calc.env.nv().pow(2)];
            for (i, p) in ps.iter().enumerate() {
                let c = calc.k0_class(p)?;
                for (s, x) in sum.iter_mut().zip(&c) {
                    *s += x;
                }
                g.row([(i + 1).to_string(), p.shape().to_string(), class(&c)]);
            }
            let diag = calc.k0_class(&Kernel::Diagonal)?;
            r.push("projection kernels", g);
            r.push("K0 sum", Entry::text(class(&sum)));
            r.push("K0 diagonal", Entry::text(class(&diag)));
            r.push("K0 identity holds", sum == diag);
            Ok(sum == diag)
        }
        KernelCommand::Orthogonality => {
            let ps = projection_kernels(&calc, &coll, true)?;
            let rep = orthogonality_report(&calc, &ps)?;
            r.push("Ext(P_i, P_j∘S)", ext_grid(&rep.ext, "i\\j"));
            let m = ps.len();
            let mut g = Grid::new(
                std::iter::once("i\\j".to_string()).chain((1..=m).map(|j| j.to_string())),
            );
            for (i, row) in rep.adjoint_products.iter().enumerate() {
                g.row(
                    std::iter::once((i + 1).to_string()).chain(row.iter().enumerate().map(
                        |(j, x)| match x {
                            _ if j <= i => "".to_string(),
                            Some(true) => "0".to_string(),
                            Some(false) => "nonzero".to_string(),
                            None => "n/a".to_string(),
                        },
                    )),
                );
            }
            r.push("P_i∘P_j^*", g);
            r.push("diagonal ok", rep.diagonal_ok());
            r.push("off-diagonal ok", rep.off_diagonal_ok());
            r.push("ok", rep.ok());
            Ok(rep.ok())
        }
        KernelCommand::Additivity => {
            let rep = additivity_check(&calc, &coll, n)?;
            r.push("HH_*", Profile::from(&rep.homology));
            let mut g = Grid::new(["i", "Ext(P_i, P_i∘S)"]);
            for (i, s) in rep.summands.iter().enumerate() {
                g.row([(i + 1).to_string(), graded(s)]);
            }
            r.push("summands", g);
            r.push("sum", Entry::Value(json!(rep.sum())));
            r.push("holds", rep.holds());
            Ok(rep.holds())
        }
    }
}

fn les<F: Field>(src: &Source, n: usize, r: &mut Report) -> Result<bool, CliError> {
    let Source::Catalog(name) = src else {
        return Err(CliError::Input("les-check needs a catalog gluing".into()));
    };
    let g = catalog::gluing::<F>(name).ok_or_else(|| {
        CliError::Input(format!(
            "{name} is not a catalog gluing; try kronecker3-gluing, a2-quiver or kxk"
        ))
    })?;
    let rep = les_check(&g, n)?;
    r.push("HH^*(glued)", Profile::from(&rep.glued));
    r.push("HH^*(B)", Profile::from(&rep.b));
    r.push("HH^*(C)", Profile::from(&rep.c));
    r.push(
        "Ext^*(M, M)",
        Profile {
            dims: rep.ext_m.clone(),
            certified_to: n,
            zero_beyond: None,
        },
    );
    r.push("Euler sum", rep.euler);
    if let Some(c) = &rep.chase {
        let mut t = Grid::new(["term", "dim"]);
        for (label, d) in [
            "HH^0(A)",
            "HH^0(B)+HH^0(C)",
            "Ext^0(M,M)",
            "HH^1(A)",
            "HH^1(B)+HH^1(C)",
        ]
        .iter()
        .zip(c)
        {
            t.row([label.to_string(), d.to_string()]);
        }
        r.push("chase", t);
        r.push("chase exact", rep.chase_exact.unwrap_or(false));
    }
    r.push("holds", rep.holds());
    Ok(rep.holds())
}

fn fullness<F: Field>(
    a: &Arc<Algebra<F>>,
    subset: Option<&[usize]>,
    n: usize,
    r: &mut Report,
) -> Result<bool, CliError> {
    let coll = projectives(a)?;
    let coll = match subset {
        Some(s) => coll.subcollection(s)?,
        None => coll,
    };
    let rep = fullness_certificate(&coll, n)?;
    r.push("length", rep.length);
    r.push("dim HH_*", rep.hh_total);
    r.push("verdict", Entry::text(rep.verdict.to_string()));
    Ok(rep.verdict != Verdict::Inconsistent)
}

pub fn catalog(action: &CatalogCommand) -> Out {
    match action {
        CatalogCommand::List => {
            let mut r = Report::new("catalog list");
            let mut t = Grid::new(["name", "dim", "vertices", "description"]);
            for name in catalog::NAMES {
                let a = catalog::algebra::<Q>(name).expect("catalog entry");
                t.row([
                    name.to_string(),
                    a.dim().to_string(),
                    a.num_vertices().to_string(),
                    catalog::describe(name).unwrap_or("").to_string(),
                ]);
            }
            r.push("algebras", t);
            Ok((r, true))
        }
        CatalogCommand::Show { name } => {
            let a = catalog::algebra::<Q>(name)
                .ok_or_else(|| CliError::Input(format!("unknown catalog algebra {name:?}")))?;
            let doc = QuiverDocument::from_algebra(&a)?;
            let mut r = Report::new(format!("catalog show {name}"));
            r.push(
                "description",
                Entry::text(catalog::describe(name).unwrap_or("")),
            );
            r.push("dim", a.dim());
            r.push("fingerprint", Entry::text(a.fingerprint()));
            r.push(
                "document",
                Entry::Value(serde_json::to_value(&doc).expect("document serializes")),
            );
            Ok((r, true))
        }
    }
}
