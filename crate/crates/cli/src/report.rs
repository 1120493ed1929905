use std::fmt;

use paralift_core::structure::StructureReport;

use crate::VERSION;

/// A human-readable report followed by a flat `key = value` section.
#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    header: Vec<(String, String)>,
    body: Vec<String>,
    machine: Vec<(String, String)>,
    passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            header: Vec::new(),
            body: Vec::new(),
            machine: Vec::new(),
            passed: true,
        }
    }

    /// A header field, mirrored into the machine section.
    pub fn field(&mut self, key: &str, value: impl fmt::Display) {
        let value = value.to_string();
        self.machine.push((key.to_string(), value.clone()));
        self.header.push((key.to_string(), value));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.body.push(text.into());
    }

    pub fn blank(&mut self) {
        if self.body.last().is_some_and(|l| !l.is_empty()) {
            self.body.push(String::new());
        }
    }

    pub fn key(&mut self, key: impl AsRef<str>, value: impl fmt::Display) {
        let mut k = key.as_ref().to_string();
        let mut n = 2;
        while self.machine.iter().any(|(m, _)| *m == k) {
            k = format!("{}_{n}", key.as_ref());
            n += 1;
        }
        self.machine.push((k, value.to_string()));
    }

    /// Marks the report as failed; the exit status becomes 2.
    pub fn fail(&mut self) {
        self.passed = false;
    }

    pub fn require(&mut self, ok: bool) {
        if !ok {
            self.fail();
        }
    }

    /// Appends a checker report; its verdict counts towards the result.
    pub fn section(&mut self, r: &StructureReport) {
        self.blank();
        self.body.extend(r.to_string().lines().map(str::to_string));
        let prefix = slug(&r.title);
        for e in &r.entries {
            let status = match (e.holds, e.informational) {
                (true, _) => "pass",
                (false, true) => "info-fail",
                (false, false) => "fail",
            };
            self.key(format!("{prefix}.{}", slug(&e.name)), status);
        }
        self.require(r.holds());
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "paralift {VERSION} {}", self.command)?;
        for (k, v) in &self.header {
            writeln!(f, "{k}: {v}")?;
        }
        writeln!(f)?;
        for l in &self.body {
            writeln!(f, "{l}")?;
        }
        if self.body.last().is_some_and(|l| !l.is_empty()) {
            writeln!(f)?;
        }
        let result = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "result: {result}")?;
        writeln!(f)?;
        writeln!(f, "[machine]")?;
        writeln!(f, "tool = paralift")?;
        writeln!(f, "version = {VERSION}")?;
        writeln!(f, "command = {}", self.command)?;
        for (k, v) in &self.machine {
            writeln!(f, "{k} = {v}")?;
        }
        writeln!(f, "status = {}", result.to_lowercase())?;
        writeln!(f, "exit = {}", self.exit_code())
    }
}

/// Lowercase ASCII key: runs of anything else become one `_`.
pub fn slug(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if c == '\'' {
            out.push_str("p");
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slug("J^2 = I"), "j_2_i");
        assert_eq!(slug("eta(xi) = eps2*delta"), "eta_xi_eps2_delta");
        assert_eq!(slug("F^{h}(xi^v) = 0"), "f_h_xi_v_0");
    }

    #[test]
    fn duplicate_keys_are_numbered() {
        let mut r = Report::new("t");
        r.key("a", 1);
        r.key("a", 2);
        r.key("a", 3);
        let text = r.to_string();
        assert!(text.contains("a = 1\na_2 = 2\na_3 = 3\n"));
        assert!(text.ends_with("status = pass\nexit = 0\n"));
        r.fail();
        assert_eq!(r.exit_code(), 2);
    }
}
