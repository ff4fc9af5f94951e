//! Line-oriented output. Every command emits `key: value` lines; with
//! `--kv` they become `key=value` with spaces in keys replaced by `_`.

use std::fmt::Display;

pub struct Out {
    kv: bool,
    prefix: Vec<String>,
}

impl Out {
    pub fn new(kv: bool) -> Self {
        Out {
            kv,
            prefix: Vec::new(),
        }
    }

    pub fn is_kv(&self) -> bool {
        self.kv
    }

    fn key(&self, key: &str) -> String {
        let mut parts = self.prefix.clone();
        parts.push(key.to_string());
        let full = parts.join(".");
        if self.kv {
            full.replace(' ', "_")
        } else {
            full
        }
    }

    pub fn put(&self, key: &str, value: impl Display) {
        let k = self.key(key);
        if self.kv {
            println!("{k}={value}");
        } else {
            println!("{k}: {value}");
        }
    }

    /// Re-emits text made of `key: value` lines; other lines get the key
    /// `text`.
    pub fn block(&self, text: &str) {
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match line.split_once(": ") {
                Some((k, v)) => self.put(k.trim(), v),
                None => self.put("text", line),
            }
        }
    }

    /// Output for free text that only makes sense to a reader, suppressed in
    /// `--kv` mode.
    pub fn note(&self, text: impl Display) {
        if !self.kv {
            println!("{text}");
        }
    }

    pub fn scoped<R>(&mut self, name: &str, f: impl FnOnce(&mut Out) -> R) -> R {
        self.prefix.push(name.to_string());
        let r = f(self);
        self.prefix.pop();
        r
    }
}
