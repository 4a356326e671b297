//! One-file-per-object storage in a single directory.
//!
//! ```text
//! <root>/instances/<hash prefix>.json   StoredInstance
//! <root>/sessions/<token>.json          SessionRecord
//! ```

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use maxtree_core::session::{Action, Mode};
use maxtree_core::{DocumentError, InstanceDocument};
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Hex digits of the content hash used as instance id.
const ID_LEN: usize = 16;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("no {kind} with id `{id}`")]
    NotFound { kind: &'static str, id: String },
    #[error("storage failure: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt file {path}: {message}")]
    Corrupt { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StoredInstance {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    pub document: InstanceDocument,
}

/// Everything needed to rebuild a session by replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionRecord {
    pub session_id: String,
    pub instance_id: String,
    pub mode: Mode,
    pub actions: Vec<Action>,
}

#[derive(Debug, Clone)]
pub struct Store {
    root: PathBuf,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_hexdigit())
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> io::Result<Self> {
        let root = root.into();
        fs::create_dir_all(root.join("instances"))?;
        fs::create_dir_all(root.join("sessions"))?;
        Ok(Store { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, dir: &str, id: &str) -> PathBuf {
        self.root.join(dir).join(format!("{id}.json"))
    }

    fn read<T: for<'de> Deserialize<'de>>(
        &self,
        dir: &str,
        kind: &'static str,
        id: &str,
    ) -> Result<T, StoreError> {
        let not_found = || StoreError::NotFound {
            kind,
            id: id.to_owned(),
        };
        if !valid_id(id) {
            return Err(not_found());
        }
        let path = self.path(dir, id);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(not_found()),
            Err(e) => return Err(e.into()),
        };
        serde_json::from_str(&text).map_err(|e| StoreError::Corrupt {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    fn write<T: Serialize>(&self, dir: &str, id: &str, value: &T) -> Result<(), StoreError> {
        let path = self.path(dir, id);
        let tmp = path.with_extension("json.tmp");
        fs::write(
            &tmp,
            serde_json::to_vec_pretty(value).expect("serializable"),
        )?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Validates and stores a document. Identical instances share one id;
    /// the first stored copy keeps its metadata.
    pub fn put_instance(&self, text: &str) -> Result<StoredInstance, StoreError> {
        let doc = InstanceDocument::from_json(text)?;
        let parsed = doc.resolve().map_err(DocumentError::from)?;
        let instance = parsed.instance().map_err(DocumentError::from)?;
        let mut canonical = InstanceDocument::from_instance(&instance, parsed.criteria.as_ref());
        let hash = Sha256::digest(canonical.to_json().as_bytes());
        let id = hex::encode(hash)[..ID_LEN].to_owned();
        if let Ok(existing) = self.get_instance(&id) {
            return Ok(existing);
        }
        canonical.name = doc.name.clone();
        let stored = StoredInstance {
            id: id.clone(),
            name: doc.name,
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            document: canonical,
        };
        self.write("instances", &id, &stored)?;
        Ok(stored)
    }

    pub fn get_instance(&self, id: &str) -> Result<StoredInstance, StoreError> {
        self.read("instances", "instance", id)
    }

    pub fn new_session_id(&self) -> String {
        let token: [u8; 16] = rand::rng().random();
        hex::encode(token)
    }

    pub fn put_session(&self, record: &SessionRecord) -> Result<(), StoreError> {
        self.write("sessions", &record.session_id, record)
    }

    pub fn get_session(&self, id: &str) -> Result<SessionRecord, StoreError> {
        self.read("sessions", "session", id)
    }
}
