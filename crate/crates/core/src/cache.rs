//! On-disk cache of generated groups.
//!
//! One file per normalized spec. Layout, little endian:
//! magic `COXTRGRP`, format version (u32), spec length (u32) and spec bytes,
//! root count (u32), order (u64), then `order × root_count` bytes holding the
//! root permutation of every element in generation order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group::{Group, GroupBudget};
use crate::roots::{RootSystem, SystemSpec};

const MAGIC: &[u8; 8] = b"COXTRGRP";
pub const FORMAT_VERSION: u32 = 1;
const EXTENSION: &str = "grp";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub key: String,
    pub order: u64,
    pub root_count: u32,
    pub version: u32,
    pub file_size: u64,
    pub path: PathBuf,
}

struct Header {
    version: u32,
    key: String,
    root_count: u32,
    order: u64,
    data_offset: usize,
}

#[derive(Clone, Debug)]
pub struct GroupCache {
    dir: PathBuf,
}

impl GroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GroupCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Cache key of a spec: its normalized display form.
    pub fn key(spec: &SystemSpec) -> String {
        spec.normalized().to_string()
    }

    pub fn path_for(&self, spec: &SystemSpec) -> PathBuf {
        let name: String = Self::key(spec)
            .chars()
            .filter_map(|c| match c {
                '+' => Some('_'),
                '(' => Some('-'),
                ')' => None,
                c => Some(c),
            })
            .collect();
        self.dir.join(format!("{name}.{EXTENSION}"))
    }

    /// Loads the cached group of `spec`, or `None` if no file exists.
    pub fn load(&self, spec: &SystemSpec) -> Result<Option<Group>> {
        let path = self.path_for(spec);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::io(&path, e)),
        };
        let bad = |reason: String| Error::CacheFormat { path: path.clone(), reason };
        let header = parse_header(&bytes).map_err(bad)?;
        if header.version != FORMAT_VERSION {
            return Err(bad(format!("version {} (expected {FORMAT_VERSION})", header.version)));
        }
        let key = Self::key(spec);
        if header.key != key {
            return Err(bad(format!("stores {:?}, expected {key:?}", header.key)));
        }
        let system = RootSystem::from_spec(&spec.normalized())?;
        if header.root_count as usize != system.len() {
            return Err(bad(format!("root count {} (expected {})", header.root_count, system.len())));
        }
        let expected = header.order as usize * header.root_count as usize;
        let data = &bytes[header.data_offset..];
        if data.len() != expected {
            return Err(bad(format!("{} permutation bytes (expected {expected})", data.len())));
        }
        let group = Group::from_permutations(&system, data.to_vec()).map_err(|e| match e {
            Error::CacheFormat { reason, .. } => bad(reason),
            e => e,
        })?;
        Ok(Some(group))
    }

    /// Writes `group` under its spec key and returns the file path.
    pub fn store(&self, group: &Group) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let spec = group.system().spec();
        let path = self.path_for(&spec);
        let key = Self::key(&spec);
        let mut bytes = Vec::with_capacity(32 + key.len() + group.permutation_bytes().len());
        bytes.extend_from_slice(MAGIC);
        bytes.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        bytes.extend_from_slice(&(key.len() as u32).to_le_bytes());
        bytes.extend_from_slice(key.as_bytes());
        bytes.extend_from_slice(&(group.root_count() as u32).to_le_bytes());
        bytes.extend_from_slice(&(group.order() as u64).to_le_bytes());
        bytes.extend_from_slice(group.permutation_bytes());
        // Write to a temporary name first so readers never see a partial file.
        let tmp = path.with_extension("tmp");
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&bytes)?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    /// Cached group if present, freshly generated (and stored) otherwise. The
    /// flag reports a cache hit.
    pub fn get_or_generate(&self, spec: &SystemSpec, budget: &GroupBudget) -> Result<(Group, bool)> {
        let spec = spec.normalized();
        budget.check(&spec.to_string(), spec.group_order())?;
        if let Some(g) = self.load(&spec)? {
            return Ok((g, true));
        }
        let group = Group::generate(&RootSystem::from_spec(&spec)?, budget)?;
        self.store(&group)?;
        Ok((group, false))
    }

    /// Entries sorted by key. A missing directory is an empty cache.
    pub fn list(&self) -> Result<Vec<CacheEntry>> {
        let mut entries = Vec::new();
        for path in self.files()? {
            let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
            let header = parse_header(&bytes).map_err(|reason| Error::CacheFormat { path: path.clone(), reason })?;
            entries.push(CacheEntry {
                key: header.key,
                order: header.order,
                root_count: header.root_count,
                version: header.version,
                file_size: bytes.len() as u64,
                path,
            });
        }
        entries.sort_by(|a, b| a.key.cmp(&b.key));
        Ok(entries)
    }

    /// Removes every cache file and returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let files = self.files()?;
        for path in &files {
            fs::remove_file(path).map_err(|e| Error::io(path, e))?;
        }
        Ok(files.len())
    }

    fn files(&self) -> Result<Vec<PathBuf>> {
        let dir = match fs::read_dir(&self.dir) {
            Ok(d) => d,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::io(&self.dir, e)),
        };
        let mut files = Vec::new();
        for entry in dir {
            let path = entry.map_err(|e| Error::io(&self.dir, e))?.path();
            if path.extension().is_some_and(|x| x == EXTENSION) {
                files.push(path);
            }
        }
        files.sort();
        Ok(files)
    }
}

fn parse_header(bytes: &[u8]) -> std::result::Result<Header, String> {
    let mut pos = 0;
    let mut take = |n: usize| -> std::result::Result<&[u8], String> {
        let slice = bytes.get(pos..pos + n).ok_or_else(|| "truncated header".to_string())?;
        pos += n;
        Ok(slice)
    };
    if take(8)? != MAGIC {
        return Err("bad magic".into());
    }
    let u32_at = |s: &[u8]| u32::from_le_bytes(s.try_into().expect("4 bytes"));
    let version = u32_at(take(4)?);
    let len = u32_at(take(4)?) as usize;
    let key = String::from_utf8(take(len)?.to_vec()).map_err(|_| "spec is not UTF-8".to_string())?;
    let root_count = u32_at(take(4)?);
    let order = u64::from_le_bytes(take(8)?.try_into().expect("8 bytes"));
    Ok(Header { version, key, root_count, order, data_offset: pos })
}
