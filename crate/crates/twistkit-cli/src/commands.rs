//! The subcommands of the `twistkit` binary.
//!
//! Every command returns either its output (a [`DescentFile`] or text) or a
//! [`CliError`] carrying the exit code. Output files are re-read and
//! validated before they are returned, so whatever a command writes passes
//! `validate`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use twistkit::cech_mc::{labelling_to_mc, mc_to_labelling, Cover};
use twistkit::descent::{
    path_to_weq, validate_green, validate_locfree, validate_path, validate_principal_cocycle,
    validate_stc, validate_twisting_cochain, validate_weq, PrincipalCocycle, StcData,
    TwistingCochainData,
};
use twistkit::gen::{
    random_gauge, random_gtt_edge, random_gtt_edge_at, random_locfree, random_quasi_iso,
    random_twist_path, random_twisting_cochain, GenParams,
};
use twistkit::gtt::{check_strictification, fill_horn2, fill_horn2_green, horn_edges};
use twistkit::homalg::is_quasi_iso;
use twistkit::report::{Finding, Report};
use twistkit::simplex_core::{
    all_faces, bary_flags, enumerate_faces, horn_simplices, pair_cells, prism_simplices, Face,
};
use twistkit::{FieldSpec, Fp, Scalar, Q};

use crate::codec;
use crate::error::CliError;
use crate::schema::{parse_field, DescentFile, Kind, ReportJson, FORMAT_VERSION};

type Res<T> = Result<T, CliError>;

/// Primes accepted in field specs.
pub const PRIMES: [u64; 6] = [2, 3, 5, 7, 101, 32003];

/// Runs `$body` with the type alias `$f` bound to the field of `$spec`.
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                type $f = Q;
                $body
            }
            FieldSpec::Prime(2) => {
                type $f = Fp<2>;
                $body
            }
            FieldSpec::Prime(3) => {
                type $f = Fp<3>;
                $body
            }
            FieldSpec::Prime(5) => {
                type $f = Fp<5>;
                $body
            }
            FieldSpec::Prime(7) => {
                type $f = Fp<7>;
                $body
            }
            FieldSpec::Prime(101) => {
                type $f = Fp<101>;
                $body
            }
            FieldSpec::Prime(32003) => {
                type $f = Fp<32003>;
                $body
            }
            FieldSpec::Prime(p) => Err(CliError::Malformed(format!(
                "unsupported modulus {p}; supported primes are {PRIMES:?}"
            ))),
        }
    };
}

/// Reads and parses a file, checking the envelope.
pub fn read_file(path: &Path) -> Res<DescentFile> {
    let text = std::fs::read_to_string(path)?;
    parse_file(&text)
}

/// Parses file contents, checking the envelope.
pub fn parse_file(text: &str) -> Res<DescentFile> {
    let file: DescentFile = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(CliError::Malformed(format!(
            "unsupported format version {}; this build reads version {FORMAT_VERSION}",
            file.version
        )));
    }
    parse_field(&file.field)?;
    Ok(file)
}

/// The payload of `file`, which must have kind `kind`.
pub fn payload<T: DeserializeOwned>(file: &DescentFile, kind: Kind) -> Res<T> {
    if file.kind != kind {
        return Err(CliError::Malformed(format!(
            "expected a {} file, found {}",
            kind.name(),
            file.kind.name()
        )));
    }
    Ok(serde_json::from_value(file.payload.clone())?)
}

/// Wraps a payload in an envelope for the field `F`.
pub fn make_file<F: Scalar, T: Serialize>(kind: Kind, payload: &T) -> Res<DescentFile> {
    Ok(DescentFile {
        version: FORMAT_VERSION,
        field: F::field().to_string(),
        kind,
        payload: serde_json::to_value(payload)?,
    })
}

/// Canonical text of a file: pretty JSON with sorted keys and a final newline.
pub fn render(file: &DescentFile) -> Res<String> {
    let value = serde_json::to_value(file)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

/// Writes `text` to `path` through a temporary file in the same directory,
/// or to standard output when `path` is `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Res<()> {
    let Some(path) = path else {
        std::io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// Validates a parsed file and returns the library report.
pub fn report(file: &DescentFile, strict: bool) -> Res<Report> {
    with_field!(parse_field(&file.field)?, F => report_as::<F>(file, strict))
}

fn report_as<F: Scalar>(file: &DescentFile, strict: bool) -> Res<Report> {
    let k = file.kind;
    Ok(match k {
        Kind::Locfree => validate_locfree(&codec::locfree::<F>(&payload(file, k)?)?),
        Kind::Twist => validate_twisting_cochain(&codec::twist::<F>(&payload(file, k)?)?),
        Kind::Green => validate_green(&codec::stc::<F>(&payload(file, k)?)?),
        Kind::Stc => validate_stc(&codec::stc::<F>(&payload(file, k)?)?, strict),
        Kind::Path => validate_path(&codec::path::<F>(&payload(file, k)?)?),
        Kind::Weq => validate_weq(&codec::weq::<F>(&payload(file, k)?)?),
        Kind::Cocycle => validate_principal_cocycle(&codec::cocycle::<F>(&payload(file, k)?)?),
        Kind::Horn => {
            let [a, b] = codec::horn::<F>(&payload(file, k)?)?;
            let mut r = Report::new();
            r.extend_prefixed("edge 0", a.validate(strict));
            r.extend_prefixed("edge 1", b.validate(strict));
            r
        }
        Kind::QuasiIso => {
            let f = codec::quasi_iso::<F>(&payload(file, k)?)?;
            let mut r = Report::new();
            if f.degree() != 0 || !is_quasi_iso(&f)? {
                r.push(Finding::error(
                    "quasi-iso",
                    "the map is not a quasi-isomorphism",
                ));
            }
            r
        }
        Kind::Strictification => {
            check_strictification(&codec::strictification::<F>(&payload(file, k)?)?)
        }
        Kind::Nerve => {
            let (cover, family) = codec::nerve::<F>(&payload(file, k)?)?;
            let mut r = Report::new();
            for (t, s) in &family {
                for mut f in s.validate().findings().iter().cloned() {
                    f.tuple = Some(t.clone());
                    r.push(f);
                }
            }
            if r.is_valid() {
                match labelling_to_mc(cover, &family) {
                    Ok(mc) => r.extend(mc.is_mc()),
                    Err(e) => r.push(Finding::error("nerve", e.to_string())),
                }
            }
            r
        }
    })
}

/// `validate`: the report of `path`, an error when it is invalid.
pub fn validate(path: &Path, kind: Option<Kind>, strict: bool) -> Res<ReportJson> {
    let file = read_file(path)?;
    if let Some(k) = kind {
        if k != file.kind {
            return Err(CliError::Malformed(format!(
                "expected a {} file, found {}",
                k.name(),
                file.kind.name()
            )));
        }
    }
    let r = ReportJson::from_report(&report(&file, strict)?);
    if r.valid {
        Ok(r)
    } else {
        Err(CliError::Invalid(r))
    }
}

/// Re-reads the rendered output and validates it; construction commands
/// return only files that pass.
fn finish(file: DescentFile, strict: bool) -> Res<DescentFile> {
    let reread = parse_file(&render(&file)?)?;
    let r = report(&reread, strict)?;
    if r.is_valid() {
        Ok(file)
    } else {
        Err(CliError::Invalid(ReportJson::from_report(&r)))
    }
}

fn require_valid(r: Report) -> Res<()> {
    if r.is_valid() {
        Ok(())
    } else {
        Err(CliError::Invalid(ReportJson::from_report(&r)))
    }
}

/// Which filler `fill-horn` builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum HornMode {
    /// Any GTT filler; the output is a simplicial twisting cochain.
    Stc,
    /// A strictly commuting filler of isomorphisms; the output is Green data.
    Green,
}

/// `fill-horn`: fills the horn `Λ_index[2]` and writes the filled 2-simplex
/// as descent data on `Δ[2]`.
pub fn fill_horn(path: &Path, index: usize, mode: HornMode, strict: bool) -> Res<DescentFile> {
    let file = read_file(path)?;
    with_field!(parse_field(&file.field)?, F => fill_horn_as::<F>(&file, index, mode, strict))
}

fn fill_horn_as<F: Scalar>(
    file: &DescentFile,
    index: usize,
    mode: HornMode,
    strict: bool,
) -> Res<DescentFile> {
    check_range("--index", index, 0, 2)?;
    let [a, b] = codec::horn::<F>(&payload(file, Kind::Horn)?)?;
    let mut r = Report::new();
    r.extend_prefixed("edge 0", a.validate(strict));
    r.extend_prefixed("edge 1", b.validate(strict));
    require_valid(r)?;
    let filled = match mode {
        HornMode::Stc => fill_horn2(&a, &b, index)?,
        HornMode::Green => fill_horn2_green(&a, &b, index)?,
    };
    let labellings = all_faces(2)
        .into_iter()
        .map(|f| Ok((f.vertices().to_vec(), filled.restrict(&f)?)))
        .collect::<Res<BTreeMap<_, _>>>()?;
    let data = StcData::new(Cover::ordered_simplex(2)?, 3, labellings)?;
    let kind = match mode {
        HornMode::Stc => Kind::Stc,
        HornMode::Green => Kind::Green,
    };
    finish(make_file::<F, _>(kind, &codec::enc_stc(&data))?, strict)
}

/// `strictify`: pads a quasi-isomorphism to an isomorphism.
pub fn strictify(path: &Path) -> Res<DescentFile> {
    let file = read_file(path)?;
    with_field!(parse_field(&file.field)?, F => strictify_as::<F>(&file))
}

fn strictify_as<F: Scalar>(file: &DescentFile) -> Res<DescentFile> {
    let f = codec::quasi_iso::<F>(&payload(file, Kind::QuasiIso)?)?;
    let s = twistkit::gtt::strictify(&f)?;
    require_valid(s.check.clone())?;
    finish(
        make_file::<F, _>(Kind::Strictification, &codec::enc_strictification(&s))?,
        false,
    )
}

/// `weq-from-path`: the weak equivalence between the endpoints of a path.
pub fn weq_from_path(path: &Path) -> Res<DescentFile> {
    let file = read_file(path)?;
    with_field!(parse_field(&file.field)?, F => weq_from_path_as::<F>(&file))
}

fn weq_from_path_as<F: Scalar>(file: &DescentFile) -> Res<DescentFile> {
    let p = codec::path::<F>(&payload(file, Kind::Path)?)?;
    require_valid(validate_path(&p))?;
    let w = path_to_weq(&p)?;
    finish(make_file::<F, _>(Kind::Weq, &codec::enc_weq(&w))?, false)
}

/// Target of `convert`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConvertTo {
    /// A `nerve` file to a `twist` file.
    Mc,
    /// A `twist` file to a `nerve` file.
    Nerve,
}

/// `convert`: between twisting cochains and families of dg-nerve simplices.
pub fn convert(path: &Path, to: ConvertTo) -> Res<DescentFile> {
    let file = read_file(path)?;
    with_field!(parse_field(&file.field)?, F => convert_as::<F>(&file, to))
}

fn convert_as<F: Scalar>(file: &DescentFile, to: ConvertTo) -> Res<DescentFile> {
    let out = match to {
        ConvertTo::Nerve => {
            let tc = codec::twist::<F>(&payload(file, Kind::Twist)?)?;
            require_valid(validate_twisting_cochain(&tc))?;
            let family = mc_to_labelling(tc.mc())?;
            make_file::<F, _>(Kind::Nerve, &codec::enc_nerve(tc.cover(), &family))?
        }
        ConvertTo::Mc => {
            let (cover, family) = codec::nerve::<F>(&payload(file, Kind::Nerve)?)?;
            let tc = TwistingCochainData::new(labelling_to_mc(cover, &family)?);
            make_file::<F, _>(Kind::Twist, &codec::enc_twist(&tc))?
        }
    };
    finish(out, false)
}

/// What `enum` lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum EnumWhat {
    /// Faces of `Δ[p]`, all or of dimension `q`.
    Faces,
    /// Faces of the horn `Λ_i[p]`.
    Horn,
    /// Cells of the pair subdivision of `Δ[p]`.
    Pair,
    /// Flags of length `q + 1` in the barycentric subdivision of `Δ[p]`.
    Bary,
    /// Nondegenerate `q`-simplices of `Δ[p] x Δ[1]`.
    Prism,
}

fn listing<T>(items: &[T], show: impl Fn(&T) -> String) -> String {
    let mut out: String = items.iter().map(|x| show(x) + "\n").collect();
    out.push_str(&format!("count: {}\n", items.len()));
    out
}

/// `enum`: one item per line followed by a `count:` line.
pub fn enumerate(what: EnumWhat, p: usize, q: Option<usize>, i: Option<usize>) -> Res<String> {
    const LIMIT: usize = 8;
    if p > LIMIT {
        return Err(CliError::Malformed(format!("-p must be at most {LIMIT}")));
    }
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Malformed(format!("--what {what:?} needs {flag}")))
    };
    Ok(match what {
        EnumWhat::Faces => {
            let faces = match q {
                Some(q) => enumerate_faces(p, q)?,
                None => all_faces(p),
            };
            listing(&faces, Face::to_string)
        }
        EnumWhat::Horn => listing(&horn_simplices(p, need(i, "-i")?)?, Face::to_string),
        EnumWhat::Pair => {
            let cells = pair_cells(p);
            let mut out: String = cells.iter().map(|c| format!("{c}\n")).collect();
            let counts: Vec<String> = (0..=p)
                .map(|d| cells.iter().filter(|c| c.dim() == d).count().to_string())
                .collect();
            out.push_str(&format!("count: {}\n", counts.join("/")));
            out
        }
        EnumWhat::Bary => listing(&bary_flags(p, need(q, "-q")?), |flag| {
            flag.iter()
                .map(Face::to_string)
                .collect::<Vec<_>>()
                .join(" < ")
        }),
        EnumWhat::Prism => listing(&prism_simplices(p, need(q, "-q")?), |s| {
            s.path()
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join("-")
        }),
    })
}

/// What `gen` produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    /// A twisting cochain.
    Twist,
    /// Locally free data.
    Locfree,
    /// A path of twisting cochains.
    Path,
    /// A principal cocycle.
    Cocycle,
    /// A quasi-isomorphism.
    QuasiIso,
    /// Two edges of the horn `Λ_index[2]`.
    Horn,
}

/// Parameters of `gen`.
#[derive(Clone, Debug)]
pub struct GenOptions {
    pub kind: GenKind,
    /// Number of opens of the cover.
    pub openings: usize,
    /// Complexes live in degrees `0..=amp`.
    pub amp: i64,
    pub seed: u64,
    /// Use the ordered cover `Δ[openings - 1]` instead of the full cover.
    pub ordered: bool,
    pub field: FieldSpec,
    /// Rank of a generated cocycle.
    pub rank: usize,
    /// Horn index of a generated horn.
    pub index: usize,
    /// Generate isomorphism edges for a horn.
    pub green: bool,
}

fn check_range<T: PartialOrd + std::fmt::Display>(name: &str, v: T, lo: T, hi: T) -> Res<()> {
    if v < lo || v > hi {
        return Err(CliError::Malformed(format!(
            "{name} must lie in {lo}..={hi}, got {v}"
        )));
    }
    Ok(())
}

/// `gen`: a deterministic random fixture.
pub fn generate(opts: &GenOptions) -> Res<DescentFile> {
    let max_opens = if opts.kind == GenKind::Path { 3 } else { 4 };
    check_range("--openings", opts.openings, 1, max_opens)?;
    check_range("--amp", opts.amp, 0, 3)?;
    check_range("--rank", opts.rank, 1, 4)?;
    check_range("--index", opts.index, 0, 2)?;
    with_field!(opts.field, F => generate_as::<F>(opts))
}

fn generate_as<F: Scalar>(opts: &GenOptions) -> Res<DescentFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let params = GenParams {
        amp: opts.amp,
        ..GenParams::default()
    };
    let cover = if opts.ordered {
        Cover::ordered_simplex(opts.openings - 1)?
    } else {
        Cover::full(opts.openings)?
    };
    let file = match opts.kind {
        GenKind::Twist => {
            let tc = TwistingCochainData::new(random_twisting_cochain::<F, _>(
                &mut rng, &cover, &params,
            ));
            make_file::<F, _>(Kind::Twist, &codec::enc_twist(&tc))?
        }
        GenKind::Locfree => {
            let d = random_locfree::<F, _>(&mut rng, &cover, &params);
            make_file::<F, _>(Kind::Locfree, &codec::enc_locfree(&d))?
        }
        GenKind::Path => {
            let p = random_twist_path::<F, _>(&mut rng, &cover, &params);
            make_file::<F, _>(Kind::Path, &codec::enc_path(&p))?
        }
        GenKind::Cocycle => {
            let gauge = random_gauge::<F, _>(&mut rng, cover.len(), opts.rank, params.entry);
            let g = PrincipalCocycle::identity(cover, opts.rank).conjugate(&gauge)?;
            make_file::<F, _>(Kind::Cocycle, &codec::enc_cocycle(&g))?
        }
        GenKind::QuasiIso => {
            let f = random_quasi_iso::<F, _>(&mut rng, &params);
            make_file::<F, _>(Kind::QuasiIso, &codec::enc_quasi_iso(&f))?
        }
        GenKind::Horn => {
            let (fa, fb) = horn_edges(opts.index)?;
            let at = |f: &Face| {
                f.position(opts.index)
                    .expect("horn edges contain the index")
            };
            let a = random_gtt_edge::<F, _>(&mut rng, &params, opts.green);
            let shared = a.vertex(&Face::new(vec![at(&fa)], 1)?).object(0).clone();
            let b = random_gtt_edge_at(&mut rng, &params, opts.green, at(&fb), &shared);
            make_file::<F, _>(Kind::Horn, &codec::enc_horn(&a, &b))?
        }
    };
    finish(file, false)
}
