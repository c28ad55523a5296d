//! Optional on-disk persistence of the rank-3 memo, enabled by the
//! CF_CACHE_DIR environment variable. Format: magic bytes "CFN1", then
//! length-prefixed records of (six u32 label components, canonical
//! polynomial text), all integers little-endian.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use cfn_core::exactmath::{poly_parse, ALPHA_T};
use cfn_core::recurrence::{Engine, Rank3Label};

const MAGIC: &[u8; 4] = b"CFN1";
const FILE_NAME: &str = "rank3.cache";

pub fn path_from_env() -> Option<PathBuf> {
    std::env::var_os("CF_CACHE_DIR").map(|d| Path::new(&d).join(FILE_NAME))
}

/// Seeds `engine` from the cache file. A missing file is a cold start; a
/// malformed one is discarded wholesale with a warning — the cache is an
/// accelerator, never a correctness input.
pub fn load(path: &Path, engine: &Engine) {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return,
        Err(e) => {
            eprintln!("cfn: ignoring unreadable cache {}: {}", path.display(), e);
            return;
        }
    };
    match parse_records(&bytes) {
        Ok(entries) => engine.preload_rank3(entries),
        Err(msg) => eprintln!("cfn: ignoring malformed cache {}: {}", path.display(), msg),
    }
}

fn parse_records(bytes: &[u8]) -> Result<Vec<(Rank3Label, cfn_core::Polynomial)>, String> {
    let mut r = bytes;
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)
        .map_err(|_| "truncated magic".to_string())?;
    if &magic != MAGIC {
        return Err("bad magic".to_string());
    }
    let mut out = Vec::new();
    loop {
        let mut len_buf = [0u8; 4];
        match r.read_exact(&mut len_buf) {
            Ok(()) => {}
            // clean end of the record stream
            Err(_) if r.is_empty() => break,
            Err(_) => return Err("truncated record length".to_string()),
        }
        let len = u32::from_le_bytes(len_buf) as usize;
        if len < 24 || len > r.len() {
            return Err("record length out of bounds".to_string());
        }
        let (payload, rest) = r.split_at(len);
        r = rest;
        let mut comps = [0u32; 6];
        for (i, c) in comps.iter_mut().enumerate() {
            *c = u32::from_le_bytes(payload[4 * i..4 * i + 4].try_into().unwrap());
        }
        let label = Rank3Label::new(comps[0], comps[1], comps[2], comps[3], comps[4], comps[5])
            .map_err(|e| format!("bad label: {}", e))?;
        let text = std::str::from_utf8(&payload[24..]).map_err(|_| "non-utf8 polynomial")?;
        let poly =
            poly_parse(ALPHA_T.clone(), text).map_err(|e| format!("bad polynomial: {}", e))?;
        out.push((label, poly));
    }
    Ok(out)
}

/// Writes the engine's current rank-3 memo. Label-sorted records and a
/// temp-file rename keep the file deterministic and never half-written.
pub fn save(path: &Path, engine: &Engine) {
    if let Err(e) = try_save(path, engine) {
        eprintln!("cfn: could not write cache {}: {}", path.display(), e);
    }
}

fn try_save(path: &Path, engine: &Engine) -> io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    for (label, poly) in engine.rank3_snapshot() {
        let text = poly.to_text();
        let len = 24 + text.len();
        buf.extend_from_slice(&(len as u32).to_le_bytes());
        for c in [label.a, label.b, label.c, label.d, label.e, label.f] {
            buf.extend_from_slice(&c.to_le_bytes());
        }
        buf.extend_from_slice(text.as_bytes());
    }
    let tmp = dir.join(format!("{}.tmp.{}", FILE_NAME, std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&buf)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
