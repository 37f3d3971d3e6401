use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use ogcat::category::{validate_category, Category, Functor};
use ogcat::config::{Limits, TieBreak};
use ogcat::constructions::{function_space, quotient, sections, FnMap};
use ogcat::domain::powerset;
use ogcat::functor_cat::{enumerate_functors, functor_category, nat_equiv_classes};
use ogcat::io::{self, Document, NamedDomain};
use ogcat::size::evaluate;
use ogcat::skeleton::{build_skeleton, iso_classes};

#[derive(Parser)]
#[command(name = "ogcat", version, about = "Finite domains, categories, skeleta and size reasoning")]
struct Cli {
    /// Search-node budget for functor enumeration.
    #[arg(long, global = true, value_name = "NODES")]
    limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and check the category axioms if it is a category.
    Validate { file: PathBuf },
    /// Equivalence classes of a domain.
    Quotient { domain: PathBuf },
    /// Every member of the powerset of a domain.
    Powerset { domain: PathBuf },
    /// Sections of a surjective map.
    Sections { map: PathBuf, source: PathBuf, target: PathBuf },
    /// The function domain between two domains.
    Functions { source: PathBuf, target: PathBuf },
    /// Isomorphism classes of objects.
    IsoClasses { category: PathBuf },
    /// A skeleton with its quasi-inverse witnesses.
    Skeleton {
        category: PathBuf,
        #[arg(long, default_value = "lex")]
        tie_break: TieBreak,
        #[arg(long, value_name = "PATH")]
        emit_witnesses: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// All functors between two categories.
    Functors { source: PathBuf, target: PathBuf },
    /// The functor category as a `.cat` file.
    FunctorCat {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Natural-equivalence classes of functors.
    NatClasses { source: PathBuf, target: PathBuf },
    /// Evaluate a size script.
    Size {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
    },
}

enum Failure {
    Semantic(String),
    Parse(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Usage(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Semantic(m) | Failure::Parse(m) | Failure::Usage(m) => m,
        }
    }
}

fn semantic(e: impl std::fmt::Display) -> Failure {
    Failure::Semantic(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut limits = Limits::default();
    if let Some(n) = cli.limit {
        limits.node_budget = n;
    }
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Quotient { domain } => {
            let d = load_domain(&domain)?;
            let q = quotient(d.domain.equality()).map_err(semantic)?;
            let mut out = String::new();
            for class in &q.classes {
                writeln!(out, "class {}: {}", class.representative, class.membership).unwrap();
            }
            emit(&out, None)
        }
        Command::Powerset { domain } => {
            let d = load_domain(&domain)?;
            let p = powerset(&d.domain, &limits).map_err(semantic)?;
            let mut out = format!("members: {}\n", p.len());
            for m in p.members() {
                writeln!(out, "{m}").unwrap();
            }
            emit(&out, None)
        }
        Command::Sections { map, source, target } => {
            let (a, b) = (load_domain(&source)?, load_domain(&target)?);
            let doc = match load(&map)? {
                Document::Map(m) => m,
                _ => return Err(Failure::Usage(format!("{} is not a map file", map.display()))),
            };
            let f = io::resolve_map(&doc, &a, &b).map_err(|e| match e {
                io::ResolveError::Parse(p) => Failure::Parse(p.to_string()),
                io::ResolveError::Construction(c) => semantic(c),
            })?;
            let set = sections(&f, &limits).map_err(semantic)?;
            let mut out = format!("sections: {}\n", set.count());
            for g in set.iter() {
                writeln!(out, "{}", show_map(&g)).unwrap();
            }
            emit(&out, None)
        }
        Command::Functions { source, target } => {
            let (a, b) = (load_domain(&source)?, load_domain(&target)?);
            let space = function_space(&a.domain, &b.domain, &limits).map_err(semantic)?;
            let mut out = format!("functions: {}\n", space.count());
            for g in space.iter() {
                writeln!(out, "{}", show_map(&g)).unwrap();
            }
            emit(&out, None)
        }
        Command::IsoClasses { category } => {
            let c = load_category(&category)?;
            let iso = iso_classes(&c);
            let mut out = String::new();
            for k in 0..iso.classes.count() {
                let members: Vec<&str> = iso.classes.members(k).into_iter().map(|o| c.object_id(o).as_str()).collect();
                writeln!(out, "class {}: {}", iso.classes.class_id(k), members.join(" ")).unwrap();
            }
            emit(&out, None)
        }
        Command::Skeleton {
            category,
            tie_break,
            emit_witnesses,
            output,
        } => {
            let c = load_category(&category)?;
            let r = build_skeleton(&c, tie_break).map_err(semantic)?;
            if let Some(path) = emit_witnesses {
                write_file(&path, &io::emit_witnesses(&r))?;
            }
            emit(&io::emit_category(&r.skeleton), output.as_deref())
        }
        Command::Functors { source, target } => {
            let (a, b) = (load_category(&source)?, load_category(&target)?);
            let fs = enumerate_functors(&a, &b, &limits).map_err(semantic)?;
            let mut out = format!("functors: {}\n", fs.len());
            for (i, f) in fs.iter().enumerate() {
                writeln!(out, "F{i}: {}", show_functor(f)).unwrap();
            }
            emit(&out, None)
        }
        Command::FunctorCat { source, target, output } => {
            let (a, b) = (load_category(&source)?, load_category(&target)?);
            let fc = functor_category(&a, &b, &limits).map_err(semantic)?;
            emit(&io::emit_category(&fc.category), output.as_deref())
        }
        Command::NatClasses { source, target } => {
            let (a, b) = (load_category(&source)?, load_category(&target)?);
            let classes = nat_equiv_classes(&a, &b, &limits).map_err(semantic)?;
            let fc = &classes.functor_category;
            let mut out = format!("classes: {}\n", classes.count());
            for (k, &rep) in classes.representatives.iter().enumerate() {
                let members: Vec<String> = classes.iso.classes.members(k).iter().map(|i| format!("F{i}")).collect();
                writeln!(out, "class F{rep}: {} | {}", members.join(" "), show_functor(&fc.functors[rep])).unwrap();
            }
            emit(&out, None)
        }
        Command::Size { file, trace } => {
            let script = match load(&file)? {
                Document::Size(s) => s,
                _ => return Err(Failure::Usage(format!("{} is not a size script", file.display()))),
            };
            let ev = evaluate(&script).map_err(semantic)?;
            emit(&ev.render(trace), None)
        }
    }
}

fn validate(file: &Path) -> Result<(), Failure> {
    match load(file)? {
        Document::Category(spec) => {
            let c = validate_category(&spec).map_err(semantic)?;
            emit(
                &format!(
                    "valid: category {} ({} objects, {} morphisms)\n",
                    c.name(),
                    c.object_count(),
                    c.morphism_count()
                ),
                None,
            )
        }
        Document::Domain(d) => emit(&format!("valid: domain {} ({} elements)\n", d.name, d.domain.carrier().len()), None),
        Document::Map(m) => emit(&format!("valid: map {} ({} assignments)\n", m.name, m.sends.len()), None),
        Document::Size(s) => {
            evaluate(&s).map_err(semantic)?;
            emit(&format!("valid: size script ({} statements)\n", s.statements.len()), None)
        }
        Document::Witnesses(w) => emit(&format!("valid: witnesses {} -> {}\n", w.skeleton, w.category), None),
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    io::parse(&text, &path.display().to_string()).map_err(|e| Failure::Parse(e.to_string()))
}

fn load_domain(path: &Path) -> Result<NamedDomain, Failure> {
    match load(path)? {
        Document::Domain(d) => Ok(d),
        _ => Err(Failure::Usage(format!("{} is not a domain file", path.display()))),
    }
}

fn load_category(path: &Path) -> Result<Arc<Category>, Failure> {
    match load(path)? {
        Document::Category(spec) => validate_category(&spec).map(Arc::new).map_err(semantic),
        _ => Err(Failure::Usage(format!("{} is not a category file", path.display()))),
    }
}

fn show_map(f: &FnMap) -> String {
    f.pairs().map(|(x, y)| format!("{x}->{y}")).collect::<Vec<_>>().join(" ")
}

fn show_functor(f: &Functor) -> String {
    let spec = f.to_spec();
    let objects: Vec<String> = spec.object_map.iter().map(|(x, y)| format!("{x}->{y}")).collect();
    let morphs: Vec<String> = spec.morph_map.iter().map(|(x, y)| format!("{x}->{y}")).collect();
    format!("objects {} ; morphs {}", objects.join(" "), morphs.join(" "))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
