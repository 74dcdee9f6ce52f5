use std::fmt::Write as _;
use std::path::Path;

use chiralfill::matrix::{MatrixDocument, ORACLE_LIMIT};
use chiralfill::report::{verify_range, Sweep};
use chiralfill::surgery::{build_presentation, mn_framed_link, SurgeryDocument};
use chiralfill::{
    cokernel, family_schubert, smith_normal_form, BigInt, ConwayWord, FillingSpec, FramedLink,
    IntegerMatrix, SchubertForm, Slope, SlopeInvolution,
};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or malformed input; exit code 2.
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub struct Output {
    text: String,
    json: Value,
    pub exit_code: u8,
}

impl Output {
    /// Fails verification (exit 1) when `expect` is given and differs from
    /// `actual`.
    fn expecting(mut self, expect: Option<&str>, actual: &str) -> Self {
        if let Some(e) = expect {
            let matches = normalize_group(e) == normalize_group(actual);
            self.json["expected"] = json!(e);
            self.json["matches_expected"] = json!(matches);
            if !matches {
                self.text.push_str(&format!(
                    "\nverification FAILED: expected {e}, got {actual}\n"
                ));
                self.exit_code = 1;
            }
        }
        self
    }

    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            exit_code: 0,
        }
    }

    pub fn print(&self, json: bool) {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&self.json).expect("values serialize")
            );
        } else {
            print!("{}", self.text);
            if !self.text.ends_with('\n') {
                println!();
            }
        }
    }
}

fn normalize_group(s: &str) -> String {
    s.split_whitespace().collect()
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("not an integer: {s:?}")))
}

fn parse_word(entries: &[String]) -> Result<ConwayWord, CliError> {
    entries.join(" ").parse().map_err(input_err)
}

fn read_input(path: Option<&Path>, what: &str) -> Result<String, CliError> {
    let path = path.ok_or_else(|| CliError::Input(format!("{what} requires --input <PATH>")))?;
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn cfrac(entries: &[String]) -> Result<Output, CliError> {
    let word = parse_word(entries)?;
    let value = word.evaluate().map_err(input_err)?;
    Ok(Output::ok(
        value.to_string(),
        json!({ "word": word.to_string(), "fraction": value }),
    ))
}

pub fn twobridge(family: Option<i64>, entries: &[String]) -> Result<Output, CliError> {
    let word = match family {
        Some(n) => {
            family_schubert(n).map_err(input_err)?;
            ConwayWord::family(n)
        }
        None => parse_word(entries)?,
    };
    let fraction = word.evaluate().map_err(input_err)?;
    let form = SchubertForm::from_fraction(&fraction).map_err(input_err)?;
    let components = form.component_count();
    let achiral = form.is_achiral_lens();
    let mut text = String::new();
    writeln!(text, "word: {word}").unwrap();
    writeln!(text, "fraction: {fraction}").unwrap();
    writeln!(text, "schubert: {form}").unwrap();
    writeln!(
        text,
        "components: {components} ({})",
        if components == 1 { "knot" } else { "link" }
    )
    .unwrap();
    writeln!(text, "mirror: {}", form.mirror()).unwrap();
    writeln!(text, "achiral branched cover: {}", yes_no(achiral)).unwrap();
    Ok(Output::ok(
        text,
        json!({
            "word": word.to_string(),
            "fraction": fraction,
            "schubert": form,
            "components": components,
            "mirror": form.mirror(),
            "achiral": achiral,
        }),
    ))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn lens(p: &str, q: &str, compare: Option<&[String]>) -> Result<Output, CliError> {
    let form = SchubertForm::new(parse_int(p)?, parse_int(q)?).map_err(input_err)?;
    let components = form.component_count();
    let achiral = form.is_achiral_lens();
    let mut text = String::new();
    writeln!(text, "form: {form}").unwrap();
    writeln!(
        text,
        "type: {} ({components} component{})",
        if components == 1 { "knot" } else { "link" },
        if components == 1 { "" } else { "s" }
    )
    .unwrap();
    writeln!(text, "mirror: {}", form.mirror()).unwrap();
    writeln!(text, "achiral: {}", yes_no(achiral)).unwrap();
    let mut out = json!({
        "form": form,
        "components": components,
        "mirror": form.mirror(),
        "achiral": achiral,
    });
    if let Some(pair) = compare {
        let other =
            SchubertForm::new(parse_int(&pair[0])?, parse_int(&pair[1])?).map_err(input_err)?;
        let same = form.equivalent(&other);
        let up_to_mirror = form.equivalent_up_to_mirror(&other);
        writeln!(text, "compare: {other}").unwrap();
        writeln!(text, "equivalent: {}", yes_no(same)).unwrap();
        writeln!(text, "equivalent up to mirror: {}", yes_no(up_to_mirror)).unwrap();
        out["compare"] = json!({
            "form": other,
            "equivalent": same,
            "equivalent_up_to_mirror": up_to_mirror,
        });
    }
    Ok(Output::ok(text, out))
}

pub fn snf(
    input: Option<&Path>,
    family: Option<i64>,
    expect: Option<&str>,
) -> Result<Output, CliError> {
    let m = match family {
        Some(n) => {
            let (link, fill) = mn_framed_link(n).map_err(input_err)?;
            build_presentation(&link, &fill).map_err(input_err)?
        }
        None => IntegerMatrix::from_json(&read_input(input, "snf")?).map_err(input_err)?,
    };
    let r = smith_normal_form(&m);
    let group = cokernel(&m);
    let diag: Vec<String> = r.d.main_diagonal().iter().map(|d| d.to_string()).collect();
    let mut text = String::new();
    for (name, mat) in [("U", &r.u), ("D", &r.d), ("V", &r.v)] {
        writeln!(text, "{name} =\n{mat}").unwrap();
    }
    writeln!(text, "diagonal: {}", diag.join(", ")).unwrap();
    writeln!(text, "cokernel: {group}").unwrap();
    let mut out = json!({
        "u": MatrixDocument::from(&r.u),
        "d": MatrixDocument::from(&r.d),
        "v": MatrixDocument::from(&r.v),
        "diagonal": diag,
        "cokernel": group,
    });
    if m.rows() <= ORACLE_LIMIT && m.cols() <= ORACLE_LIMIT {
        let oracle = chiralfill::minors_gcd_oracle(&m).map_err(input_err)?;
        writeln!(text, "minors oracle: {oracle}").unwrap();
        out["minors_oracle"] = json!(oracle);
        if oracle != group {
            return Ok(Output {
                text: text + "verification FAILED: Smith form and minors oracle disagree\n",
                json: out,
                exit_code: 1,
            });
        }
    }
    Ok(Output::ok(text, out).expecting(expect, &group.to_string()))
}

pub fn surgery(
    input: Option<&Path>,
    template: Option<&str>,
    n: Option<i64>,
    fills: &[String],
    drills: &[String],
    expect: Option<&str>,
) -> Result<Output, CliError> {
    let (link, mut fill): (FramedLink, FillingSpec) = match (template, input) {
        (Some(_), Some(_)) => {
            return Err(CliError::Input("use either --template or --input".into()))
        }
        (Some("mn"), None) => {
            let n = n.ok_or_else(|| CliError::Input("template mn needs --n".into()))?;
            mn_framed_link(n).map_err(input_err)?
        }
        (Some(other), None) => {
            return Err(CliError::Input(format!(
                "unknown template {other:?} (available: mn)"
            )))
        }
        (None, _) => SurgeryDocument::parse(&read_input(input, "surgery")?).map_err(input_err)?,
    };
    for d in drills {
        let i = link.component(d).map_err(input_err)?;
        fill.drill(i);
    }
    for f in fills {
        let (name, slope) = f
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected COMPONENT=p/q, got {f:?}")))?;
        let i = link.component(name.trim()).map_err(input_err)?;
        let slope: Slope = slope.parse().map_err(input_err)?;
        fill.set(i, slope);
    }
    let m = build_presentation(&link, &fill).map_err(input_err)?;
    let group = cokernel(&m);
    let doc = SurgeryDocument::from_parts(&link, &fill);
    Ok(Output::ok(
        group.to_string(),
        json!({
            "link": doc,
            "presentation": MatrixDocument::from(&m),
            "h1": group,
        }),
    )
    .expecting(expect, &group.to_string()))
}

pub fn family(min: i64, max: i64) -> Result<Output, CliError> {
    let sweep = verify_range(min, max).map_err(input_err)?;
    let text = family_table(&sweep);
    let mut out = serde_json::to_value(&sweep).expect("report serializes");
    out["passed"] = json!(sweep.passed());
    Ok(Output {
        text,
        json: out,
        exit_code: if sweep.passed() { 0 } else { 1 },
    })
}

fn family_table(sweep: &Sweep) -> String {
    let header = [
        "n",
        "schubert",
        "comp",
        "t(n)",
        "p(n)",
        "H1(M_n)",
        "H1(+1)",
        "H1(-1)",
        "chirality",
        "null-homology",
    ];
    let rows: Vec<Vec<String>> = sweep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.schubert.to_string(),
                r.components.to_string(),
                r.torsion.to_string(),
                r.lens_order.to_string(),
                r.h1_exterior.to_string(),
                r.h1_plus_one_filling.to_string(),
                r.h1_minus_one_filling.to_string(),
                r.chirality.to_string(),
                r.null_homology.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap()
        })
        .collect();
    let line = |cells: Vec<&str>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut text = String::new();
    writeln!(text, "{}", line(header.to_vec())).unwrap();
    for r in &rows {
        writeln!(text, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
    }
    match &sweep.failure {
        None => writeln!(
            text,
            "all checks passed for {} member(s) in [{}, {}]",
            sweep.rows.len(),
            sweep.n_min,
            sweep.n_max
        )
        .unwrap(),
        Some(f) => writeln!(text, "verification FAILED: {f}").unwrap(),
    }
    text
}

fn parse_matrix(s: &str) -> Result<SlopeInvolution, CliError> {
    let v: Vec<BigInt> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_int)
        .collect::<Result<_, _>>()?;
    let [a, b, c, d]: [BigInt; 4] = v
        .try_into()
        .map_err(|_| CliError::Input(format!("expected four entries a,b,c,d, got {s:?}")))?;
    SlopeInvolution::new(a, b, c, d).map_err(input_err)
}

fn parse_slope(s: &str) -> Result<Slope, CliError> {
    s.parse().map_err(input_err)
}

pub fn slope_normalize(p: &str, q: &str) -> Result<Output, CliError> {
    let s = Slope::new(parse_int(p)?, parse_int(q)?).map_err(input_err)?;
    Ok(Output::ok(s.to_string(), json!({ "slope": s })))
}

pub fn slope_distance(a: &str, b: &str) -> Result<Output, CliError> {
    let (a, b) = (parse_slope(a)?, parse_slope(b)?);
    let d = a.distance(&b);
    Ok(Output::ok(
        d.to_string(),
        json!({ "a": a, "b": b, "distance": d.to_string() }),
    ))
}

pub fn slope_apply(matrix: &str, slope: &str) -> Result<Output, CliError> {
    let h = parse_matrix(matrix)?;
    let s = parse_slope(slope)?;
    let image = h.apply(&s);
    Ok(Output::ok(
        image.to_string(),
        json!({ "matrix": h.to_string(), "slope": s, "image": image }),
    ))
}

pub fn slope_fixed(matrix: &str, bound: u64) -> Result<Output, CliError> {
    if bound == 0 {
        return Err(CliError::Input("bound must be at least 1".into()));
    }
    let h = parse_matrix(matrix)?;
    let fixed = h.fixed_slopes(bound);
    let text = fixed
        .iter()
        .map(Slope::to_string)
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::ok(
        text,
        json!({ "matrix": h.to_string(), "bound": bound, "fixed": fixed }),
    ))
}
