//! Little-endian byte helpers shared by the codecs and the container format.

/// Appends little-endian values to a byte buffer.
#[derive(Debug, Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn words(&mut self, words: &[u64]) {
        self.buf.reserve(words.len() * 8);
        for w in words {
            self.u64(*w);
        }
    }

    pub fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    /// Zero-pads to a multiple of 8 bytes, counted from the start of the buffer.
    pub fn pad8(&mut self) {
        let rem = self.buf.len() % 8;
        if rem != 0 {
            self.buf.resize(self.buf.len() + 8 - rem, 0);
        }
    }

    /// Writes a 64-bit byte-length prefix, then the payload padded to 8 bytes.
    pub fn block(&mut self, payload: &[u8]) {
        self.u64(payload.len() as u64);
        self.buf.extend_from_slice(payload);
        let rem = payload.len() % 8;
        if rem != 0 {
            self.buf.resize(self.buf.len() + 8 - rem, 0);
        }
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.buf
    }
}

/// Ran out of input while reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Short;

/// Cursor over little-endian input.
#[derive(Debug, Clone)]
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8], Short> {
        if self.remaining() < n {
            return Err(Short);
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn u8(&mut self) -> Result<u8, Short> {
        Ok(self.take(1)?[0])
    }

    pub fn u32(&mut self) -> Result<u32, Short> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64, Short> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Reads `count` 64-bit words.
    pub fn words(&mut self, count: usize) -> Result<Vec<u64>, Short> {
        let bytes = self.take(count.checked_mul(8).ok_or(Short)?)?;
        Ok(bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    /// Reads a block written by [`Writer::block`].
    pub fn block(&mut self) -> Result<&'a [u8], Short> {
        let len = usize::try_from(self.u64()?).map_err(|_| Short)?;
        let padded = len.checked_add(7).ok_or(Short)? & !7;
        let s = self.take(padded)?;
        Ok(&s[..len])
    }

    pub fn skip_pad8(&mut self) -> Result<(), Short> {
        let rem = self.pos % 8;
        if rem != 0 {
            self.take(8 - rem)?;
        }
        Ok(())
    }
}

/// Number of 64-bit words needed for `bits` bits.
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}
