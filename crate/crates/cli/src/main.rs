use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tagmark::{
    apply_attack, ber, embed, extract, prepare_tag, psnr, read_image, read_key, verify,
    write_image, write_key, AttackKind, AttackSpec, GrayImage, PositionRecord, ReadOptions,
    TamperedPosition,
};

/// Fragile tag watermarking for grayscale images.
#[derive(Debug, Parser)]
#[command(name = "tagmark", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hide a tag in a cover image and write the watermarked image and key.
    Embed {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        tag: PathBuf,
        #[arg(long)]
        key_phrase: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        record: PathBuf,
        /// Convert colour inputs to gray with BT.601 luma.
        #[arg(long)]
        to_gray: bool,
    },
    /// Recover the tag from a watermarked image.
    Extract {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        record: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a watermarked image; exits 2 when it has been tampered with.
    Verify {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        record: PathBuf,
        /// Original tag image, used to localize damage.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        to_gray: bool,
    },
    /// Apply a seeded attack to an image.
    Attack {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        density: f64,
        #[arg(long, default_value_t = 2.0)]
        sigma: f64,
        /// Rectangle as ROW,COL,HEIGHT,WIDTH.
        #[arg(long, value_delimiter = ',')]
        rect: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        fill: u8,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print PSNR and high-nibble BER between two images.
    Metrics {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    SaltPepper,
    AdditiveNoise,
    RegionOverwrite,
    BitFlip,
}

#[derive(Debug, Serialize)]
struct Report {
    authentic: bool,
    ber: Option<f64>,
    tampered: Vec<TamperedPosition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psnr: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!(
                "tagmark: {} (see --help)",
                first.trim_start_matches("error: ")
            );
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tagmark: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Embed {
            cover,
            tag,
            key_phrase,
            out,
            record,
            to_gray,
        } => {
            let opts = ReadOptions { to_gray };
            let cover_img = load(&cover, opts)?;
            let tag_img = load(&tag, opts)?;
            let (watermarked, key) = embed(&cover_img, &tag_img, key_phrase.as_bytes())?;
            write_image(&watermarked, &out)
                .with_context(|| format!("writing {}", out.display()))?;
            save_key(&key, &record)?;
            println!("PSNR: {} dB", fmt_db(psnr(&cover_img, &watermarked)?));
        }
        Command::Extract { image, record, out } => {
            let img = load(&image, ReadOptions::default())?;
            let key = load_key(&record)?;
            let (tag, _) = extract(&img, &key)?;
            write_image(&tag, &out).with_context(|| format!("writing {}", out.display()))?;
        }
        Command::Verify {
            image,
            record,
            reference,
            report,
            to_gray,
        } => {
            let img = load(&image, ReadOptions::default())?;
            let key = load_key(&record)?;
            let reference = reference
                .map(|p| load(&p, ReadOptions { to_gray }))
                .transpose()?;
            let plane = reference.as_ref().map(prepare_tag);
            let verdict = verify(&img, &key, plane.as_ref())?;
            let psnr = match &reference {
                Some(tag) => {
                    let value = psnr(&extract(&img, &key)?.0, tag)?;
                    value.is_finite().then_some(value)
                }
                None => None,
            };
            let out = Report {
                authentic: verdict.authentic,
                ber: verdict.ber,
                tampered: verdict.tampered_positions,
                psnr,
            };
            let file =
                File::create(&report).with_context(|| format!("creating {}", report.display()))?;
            serde_json::to_writer_pretty(BufWriter::new(file), &out)?;
            if out.authentic {
                println!("authentic");
                return Ok(ExitCode::SUCCESS);
            }
            println!("tampered ({} localized positions)", out.tampered.len());
            return Ok(ExitCode::from(2));
        }
        Command::Attack {
            image,
            kind,
            out,
            density,
            sigma,
            rect,
            fill,
            count,
            seed,
        } => {
            let img = load(&image, ReadOptions::default())?;
            let kind = match kind {
                Kind::SaltPepper => AttackKind::SaltPepper { density },
                Kind::AdditiveNoise => AttackKind::AdditiveNoise { sigma },
                Kind::RegionOverwrite => {
                    let Some(r) = rect.filter(|r| r.len() == 4) else {
                        bail!("region-overwrite needs --rect ROW,COL,HEIGHT,WIDTH");
                    };
                    AttackKind::RegionOverwrite {
                        row: r[0],
                        col: r[1],
                        height: r[2],
                        width: r[3],
                        fill,
                    }
                }
                Kind::BitFlip => AttackKind::BitFlip { count },
            };
            let attacked = apply_attack(&img, &AttackSpec::new(kind, seed))?;
            write_image(&attacked, &out).with_context(|| format!("writing {}", out.display()))?;
        }
        Command::Metrics { a, b } => {
            let a = load(&a, ReadOptions::default())?;
            let b = load(&b, ReadOptions::default())?;
            println!("PSNR: {} dB", fmt_db(psnr(&a, &b)?));
            println!("BER: {:.6}", ber(&prepare_tag(&a), &prepare_tag(&b))?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load(path: &Path, opts: ReadOptions) -> Result<GrayImage> {
    read_image(path, opts).with_context(|| format!("reading {}", path.display()))
}

fn load_key(path: &Path) -> Result<PositionRecord> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_key(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn save_key(record: &PositionRecord, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_key(record, BufWriter::new(file))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn fmt_db(value: f64) -> String {
    if value.is_infinite() {
        "inf".to_string()
    } else {
        format!("{value:.3}")
    }
}
