//! Persistent Jack coefficient tables under `$HGFMAT_JACK_CACHE_DIR`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use hgfmat::scalar::{Rational, Scalar};

pub const CACHE_ENV: &str = "HGFMAT_JACK_CACHE_DIR";

pub struct CacheDir(Option<PathBuf>);

impl CacheDir {
    pub fn from_env() -> Self {
        CacheDir(std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    }

    fn file<S: Scalar>(&self) -> Option<PathBuf> {
        self.0.as_ref().map(|dir| dir.join(format!("jack-{}.txt", S::BACKEND)))
    }

    /// A missing or unreadable file only costs recomputation, so problems are warnings.
    pub fn load(&self) {
        load_one::<Rational>(self.file::<Rational>());
        load_one::<f64>(self.file::<f64>());
    }

    pub fn save(&self) {
        if let Some(dir) = &self.0 {
            if let Err(e) = std::fs::create_dir_all(dir) {
                eprintln!("hgfmat: warning: cannot create {}: {e}", dir.display());
                return;
            }
        }
        save_one::<Rational>(self.file::<Rational>());
        save_one::<f64>(self.file::<f64>());
    }
}

fn load_one<S: Scalar>(path: Option<PathBuf>) {
    let Some(path) = path else { return };
    let Ok(file) = File::open(&path) else { return };
    if let Err(e) = S::jack_table().load(BufReader::new(file)) {
        eprintln!("hgfmat: warning: ignoring {}: {e}", path.display());
    }
}

fn save_one<S: Scalar>(path: Option<PathBuf>) {
    let Some(path) = path else { return };
    if S::jack_table().stats().entries == 0 {
        return;
    }
    let tmp = path.with_extension("tmp");
    let written = File::create(&tmp)
        .and_then(|f| {
            let mut out = BufWriter::new(f);
            S::jack_table().dump(&mut out)?;
            out.flush()
        })
        .and_then(|_| std::fs::rename(&tmp, &path));
    if let Err(e) = written {
        eprintln!("hgfmat: warning: cannot write {}: {e}", path.display());
    }
}
