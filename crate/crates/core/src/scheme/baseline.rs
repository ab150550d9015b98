use std::collections::BTreeSet;

use serde::Serialize;

use super::delivery::check_demands;
use super::{FileLayout, Library, RandomSource, RngSource, SchemeError, SystemConfig};
use crate::gfmds::{Field, ShareVector};
use crate::secrecy::{baseline_model, check_zero_information, Observer};
use crate::Rational;

/// The no-helper-memory scheme: every user holds one whole-file pad `K_k`
/// and the server sends `W_{d_k} ⊕ K_k` to each user in turn.
#[derive(Debug, Clone)]
pub struct BaselineSession {
    field: Field,
    layout: Option<FileLayout>,
    keys: Vec<ShareVector>,
    demands: Vec<usize>,
    transmissions: Vec<ShareVector>,
    num_files: usize,
}

impl BaselineSession {
    /// `files` are whole files as symbol vectors of equal length.
    pub fn run(
        field: Field,
        files: &[ShareVector],
        demands: &[usize],
        src: &mut dyn RandomSource,
    ) -> Result<Self, SchemeError> {
        check_demands(demands, demands.len(), files.len())?;
        let len = files.first().map_or(0, ShareVector::len);
        if let Some((index, f)) = files.iter().enumerate().find(|(_, f)| f.len() != len) {
            return Err(SchemeError::FileLength {
                index,
                expected: len,
                got: f.len(),
            });
        }
        let keys: Vec<ShareVector> = demands.iter().map(|_| src.draw(len)).collect();
        let transmissions = demands
            .iter()
            .zip(&keys)
            .map(|(&d, key)| {
                let mut x = files[d].clone();
                x.xor_assign(key);
                x
            })
            .collect();
        Ok(Self {
            field,
            layout: None,
            keys,
            demands: demands.to_vec(),
            transmissions,
            num_files: files.len(),
        })
    }

    pub fn from_library(
        config: &SystemConfig,
        library: &Library,
        demands: &[usize],
    ) -> Result<Self, SchemeError> {
        config.validate()?;
        if demands.len() != config.num_users {
            return Err(SchemeError::UserCount {
                expected: config.num_users,
                got: demands.len(),
            });
        }
        let layout = FileLayout::new(library.file_bytes(), config.field.bits(), 1);
        let files: Vec<ShareVector> = library
            .to_symbols(&layout)?
            .into_iter()
            .map(|mut parts| parts.remove(0))
            .collect();
        let mut src = RngSource::new(config.seed, config.field.bits());
        let mut session = Self::run(Field::new(config.field), &files, demands, &mut src)?;
        session.layout = Some(layout);
        Ok(session)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_files(&self) -> usize {
        self.num_files
    }

    pub fn num_users(&self) -> usize {
        self.demands.len()
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    pub fn transmissions(&self) -> &[ShareVector] {
        &self.transmissions
    }

    pub fn decode(&self, user: usize) -> ShareVector {
        let mut w = self.transmissions[user].clone();
        w.xor_assign(&self.keys[user]);
        w
    }

    pub fn decode_bytes(&self, user: usize) -> Result<Vec<u8>, SchemeError> {
        let layout = self
            .layout
            .ok_or_else(|| SchemeError::Internal("session has no byte layout".into()))?;
        layout.join(&[self.decode(user)])
    }

    /// One file-sized transmission per user.
    pub fn rate(&self) -> Rational {
        Rational::from(self.num_users() as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaselineReport {
    #[serde(serialize_with = "crate::serialize_rational")]
    pub rate: Rational,
    pub decoded: bool,
    /// Each user learns nothing about the files it did not request, and the
    /// broadcast alone reveals nothing.
    pub secure: bool,
}

/// Runs the baseline on a synthetic library and checks it end to end.
/// Helper memory in `config` is ignored.
pub fn baseline_rate_m0(config: &SystemConfig, demands: &[usize]) -> Result<BaselineReport, SchemeError> {
    let library = Library::synthetic(config.num_files, config.file_bytes, config.seed)?;
    let session = BaselineSession::from_library(config, &library, demands)?;
    let mut decoded = true;
    for (k, &d) in demands.iter().enumerate() {
        decoded &= session.decode_bytes(k)? == library.file(d);
    }
    let internal = |e: crate::secrecy::SecrecyError| SchemeError::Internal(e.to_string());
    let all: BTreeSet<usize> = (0..config.num_files).collect();
    let mut secure = check_zero_information(&baseline_model(&session, Observer::Eavesdropper).map_err(internal)?, &all).holds;
    for (k, &d) in demands.iter().enumerate() {
        let mut others = all.clone();
        others.remove(&d);
        let model = baseline_model(&session, Observer::User(k)).map_err(internal)?;
        secure &= check_zero_information(&model, &others).holds;
    }
    Ok(BaselineReport {
        rate: session.rate(),
        decoded,
        secure,
    })
}
