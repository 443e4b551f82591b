//! HTTP transport with cassette-style record/replay.
//!
//! Every endpoint access goes through [`HttpTransport`], so the whole
//! module tests offline: `ReplayTransport` serves a directory of numbered
//! response bodies in request order, `RecordTransport` writes one while
//! passing through, and `LiveTransport` does rate-limited retrying GETs.

use std::cell::RefCell;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use super::IngestError;

pub trait HttpTransport {
    /// GET `url` with the given query pairs, returning the response body.
    fn get(&self, url: &str, query: &[(String, String)]) -> Result<String, IngestError>;

    /// How many network requests were actually performed.
    fn request_count(&self) -> usize;
}

/// Replays recorded responses in request order (0000.json, 0001.json, ...).
pub struct ReplayTransport {
    bodies: RefCell<std::vec::IntoIter<String>>,
    served: RefCell<usize>,
}

impl ReplayTransport {
    pub fn from_dir(dir: &Path) -> Result<Self, IngestError> {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| IngestError::Io {
                path: dir.display().to_string(),
                source: e,
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        let bodies: Vec<String> = files
            .iter()
            .map(|p| {
                std::fs::read_to_string(p).map_err(|e| IngestError::Io {
                    path: p.display().to_string(),
                    source: e,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self::from_bodies(bodies))
    }

    pub fn from_bodies(bodies: Vec<String>) -> Self {
        ReplayTransport {
            bodies: RefCell::new(bodies.into_iter()),
            served: RefCell::new(0),
        }
    }
}

impl HttpTransport for ReplayTransport {
    fn get(&self, url: &str, _query: &[(String, String)]) -> Result<String, IngestError> {
        match self.bodies.borrow_mut().next() {
            Some(body) => {
                *self.served.borrow_mut() += 1;
                Ok(body)
            }
            None => Err(IngestError::Network {
                url: url.to_string(),
                message: "replay cassette exhausted".to_string(),
                retryable: false,
            }),
        }
    }

    fn request_count(&self) -> usize {
        *self.served.borrow()
    }
}

/// Passes through to an inner transport and records each body into `dir`.
pub struct RecordTransport<T: HttpTransport> {
    inner: T,
    dir: PathBuf,
    next: RefCell<usize>,
}

impl<T: HttpTransport> RecordTransport<T> {
    pub fn new(inner: T, dir: impl Into<PathBuf>) -> Result<Self, IngestError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|e| IngestError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
        Ok(RecordTransport {
            inner,
            dir,
            next: RefCell::new(0),
        })
    }
}

impl<T: HttpTransport> HttpTransport for RecordTransport<T> {
    fn get(&self, url: &str, query: &[(String, String)]) -> Result<String, IngestError> {
        let body = self.inner.get(url, query)?;
        let n = *self.next.borrow();
        *self.next.borrow_mut() = n + 1;
        let path = self.dir.join(format!("{n:04}.json"));
        std::fs::write(&path, &body).map_err(|e| IngestError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Ok(body)
    }

    fn request_count(&self) -> usize {
        self.inner.request_count()
    }
}

/// Live GETs with a minimum request interval and exponential backoff on
/// retryable failures.
pub struct LiveTransport {
    client: reqwest::blocking::Client,
    min_interval: Duration,
    max_retries: usize,
    last_request: Mutex<Option<Instant>>,
    requests: Mutex<usize>,
}

impl LiveTransport {
    pub fn new(timeout: Duration, min_interval: Duration, max_retries: usize) -> Result<Self, IngestError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .user_agent("bioevents/0.1 (corpus analytics toolkit)")
            .build()
            .map_err(|e| IngestError::Config(e.to_string()))?;
        Ok(LiveTransport {
            client,
            min_interval,
            max_retries,
            last_request: Mutex::new(None),
            requests: Mutex::new(0),
        })
    }

    fn throttle(&self) {
        let mut last = self.last_request.lock().expect("rate limiter poisoned");
        if let Some(at) = *last {
            let elapsed = at.elapsed();
            if elapsed < self.min_interval {
                std::thread::sleep(self.min_interval - elapsed);
            }
        }
        *last = Some(Instant::now());
    }
}

impl HttpTransport for LiveTransport {
    fn get(&self, url: &str, query: &[(String, String)]) -> Result<String, IngestError> {
        let mut delay = Duration::from_millis(500);
        for attempt in 0..=self.max_retries {
            self.throttle();
            *self.requests.lock().expect("counter poisoned") += 1;
            let response = self.client.get(url).query(query).send();
            match response {
                Ok(r) if r.status().is_success() => {
                    return r.text().map_err(|e| IngestError::Network {
                        url: url.to_string(),
                        message: e.to_string(),
                        retryable: false,
                    });
                }
                Ok(r) => {
                    let status = r.status();
                    let retryable = status.as_u16() == 429 || status.is_server_error();
                    if !(retryable && attempt < self.max_retries) {
                        return Err(IngestError::Network {
                            url: url.to_string(),
                            message: format!("HTTP {status}"),
                            retryable,
                        });
                    }
                }
                Err(e) => {
                    if attempt >= self.max_retries {
                        return Err(IngestError::Network {
                            url: url.to_string(),
                            message: e.to_string(),
                            retryable: true,
                        });
                    }
                }
            }
            std::thread::sleep(delay);
            delay *= 2;
        }
        unreachable!("retry loop returns on final attempt")
    }

    fn request_count(&self) -> usize {
        *self.requests.lock().expect("counter poisoned")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_serves_in_order_then_fails() {
        let t = ReplayTransport::from_bodies(vec!["one".into(), "two".into()]);
        assert_eq!(t.get("http://x", &[]).unwrap(), "one");
        assert_eq!(t.get("http://x", &[]).unwrap(), "two");
        assert!(t.get("http://x", &[]).is_err());
        assert_eq!(t.request_count(), 2);
    }

    #[test]
    fn record_writes_cassette_files() {
        let dir = tempfile::tempdir().unwrap();
        let cassette = dir.path().join("c");
        let inner = ReplayTransport::from_bodies(vec!["body".into()]);
        let rec = RecordTransport::new(inner, &cassette).unwrap();
        rec.get("http://x", &[]).unwrap();
        let replay = ReplayTransport::from_dir(&cassette).unwrap();
        assert_eq!(replay.get("http://x", &[]).unwrap(), "body");
    }
}
