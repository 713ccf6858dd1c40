use std::fmt;
use std::time::Duration;

/// One CSV line of measurements.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub name: String,
    pub input_bytes: u64,
    pub output_bytes: u64,
    pub ratio: f64,
    pub seconds: f64,
    pub mb_per_s: f64,
    pub peak_bytes: u64,
}

pub const HEADER: &str = "name,input_bytes,output_bytes,ratio_pct,seconds,mb_per_s,peak_bytes";

impl BenchRecord {
    /// `input_bytes` is the uncompressed size, whichever way the command ran.
    pub fn new(name: &str, input_bytes: u64, output_bytes: u64, elapsed: Duration) -> Self {
        let seconds = elapsed.as_secs_f64();
        let ratio = if input_bytes == 0 {
            0.0
        } else {
            100.0 * output_bytes as f64 / input_bytes as f64
        };
        let mb_per_s = if seconds > 0.0 {
            input_bytes as f64 / 1e6 / seconds
        } else {
            0.0
        };
        Self {
            name: name.to_string(),
            input_bytes,
            output_bytes,
            ratio,
            seconds,
            mb_per_s,
            peak_bytes: peak_memory(),
        }
    }
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // names with separators are quoted, CSV style
        let name = if self.name.contains([',', '"', '\n']) {
            format!("\"{}\"", self.name.replace('"', "\"\""))
        } else {
            self.name.clone()
        };
        write!(
            f,
            "{name},{},{},{:.4},{:.6},{:.3},{}",
            self.input_bytes,
            self.output_bytes,
            self.ratio,
            self.seconds,
            self.mb_per_s,
            self.peak_bytes
        )
    }
}

/// Peak resident set size of this process, or 0 where unavailable.
pub fn peak_memory() -> u64 {
    std::fs::read_to_string("/proc/self/status")
        .ok()
        .and_then(|s| {
            s.lines()
                .find_map(|l| l.strip_prefix("VmHWM:"))
                .and_then(|v| v.trim().trim_end_matches("kB").trim().parse::<u64>().ok())
        })
        .map_or(0, |kb| kb * 1024)
}
