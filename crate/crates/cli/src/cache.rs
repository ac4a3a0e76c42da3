//! `<cache>/family-a/n<k>.json` and `<cache>/ads/f<k>-<ds>.json`. Every hit is
//! re-validated on load; a stale or corrupt entry is rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use qcss_core::diffset::{CosetPattern, CyclicSubset, DsKind};
use qcss_core::export::{AdsDocument, FamilyDocument};
use qcss_core::z4::{self, FamilyA};

use crate::commands::CliError;

fn family_path(dir: &Path, n: u32) -> PathBuf {
    dir.join("family-a").join(format!("n{n}.json"))
}

fn ads_path(dir: &Path, f: u32, ds: DsKind) -> PathBuf {
    dir.join("ads").join(format!("f{f}-{}.json", ds.as_str()))
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn load_family(dir: Option<&Path>, n: u32) -> Result<FamilyA, CliError> {
    let Some(dir) = dir else {
        return Ok(z4::build_family_a(n)?);
    };
    let path = family_path(dir, n);
    if let Ok(text) = fs::read_to_string(&path) {
        match FamilyDocument::from_json(&text).and_then(FamilyDocument::into_family) {
            Ok(family) if family.n() == n => return Ok(family),
            _ => eprintln!("warning: discarding invalid cache entry {}", path.display()),
        }
    }
    let family = z4::build_family_a(n)?;
    store_family(Some(dir), &family)?;
    Ok(family)
}

pub fn store_family(dir: Option<&Path>, family: &FamilyA) -> Result<(), CliError> {
    if let Some(dir) = dir {
        write(&family_path(dir, family.n()), &FamilyDocument::from_family(family).to_json())?;
    }
    Ok(())
}

pub fn load_ads(dir: Option<&Path>, f: u32, ds: DsKind) -> Result<CyclicSubset, CliError> {
    let Some(dir) = dir else {
        return Ok(ds.almost_difference_set(f)?);
    };
    let path = ads_path(dir, f, ds);
    if let Ok(text) = fs::read_to_string(&path) {
        let expected = (4 * f, 2 * f - 1, f - 2, f - 1);
        match AdsDocument::from_json(&text).and_then(AdsDocument::into_subset) {
            Ok(set) if set.classify().params() == expected => return Ok(set),
            _ => eprintln!("warning: discarding invalid cache entry {}", path.display()),
        }
    }
    let set = ds.almost_difference_set(f)?;
    store_ads(Some(dir), &AdsDocument::new(f, ds, &set, CosetPattern::CANONICAL))?;
    Ok(set)
}

pub fn store_ads(dir: Option<&Path>, doc: &AdsDocument) -> Result<(), CliError> {
    if let Some(dir) = dir {
        if doc.pattern == CosetPattern::CANONICAL {
            write(&ads_path(dir, doc.f, doc.ds), &doc.to_json())?;
        }
    }
    Ok(())
}
