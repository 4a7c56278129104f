//! Frame and annotation ingestion/serialization: the shared pixel and
//! geometry vocabulary for every other module.
//!
//! Sequences are directories of 8-bit grayscale images (binary PGM or PNG)
//! plus a `sequence.txt` manifest naming the frame rate and scene id.
//! Annotations are one whitespace-separated line per (frame, track).

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Sentinel label for an unannotated level.
pub const UNLABELED: &str = "-";

/// A single 8-bit grayscale frame, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
    /// Frame ordinal within its sequence.
    pub t: usize,
}

impl Frame {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>, t: usize) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::Dimension(format!(
                "frame {t}: {}x{} does not match {} pixels",
                width,
                height,
                pixels.len()
            )));
        }
        Ok(Frame {
            width,
            height,
            pixels,
            t,
        })
    }

    /// Constant-intensity frame, mostly useful in tests and warm-up.
    pub fn filled(width: usize, height: usize, value: u8, t: usize) -> Self {
        Frame {
            width,
            height,
            pixels: vec![value; width * height],
            t,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        self.pixels[y * self.width + x] = v;
    }

    /// Bilinear resize to `(new_w, new_h)` with half-pixel sample centers.
    pub fn resize_bilinear(&self, new_w: usize, new_h: usize) -> Frame {
        assert!(new_w > 0 && new_h > 0);
        let mut out = vec![0u8; new_w * new_h];
        let sx = self.width as f32 / new_w as f32;
        let sy = self.height as f32 / new_h as f32;
        for y in 0..new_h {
            let fy = ((y as f32 + 0.5) * sy - 0.5).clamp(0.0, (self.height - 1) as f32);
            let y0 = fy.floor() as usize;
            let y1 = (y0 + 1).min(self.height - 1);
            let wy = fy - y0 as f32;
            for x in 0..new_w {
                let fx = ((x as f32 + 0.5) * sx - 0.5).clamp(0.0, (self.width - 1) as f32);
                let x0 = fx.floor() as usize;
                let x1 = (x0 + 1).min(self.width - 1);
                let wx = fx - x0 as f32;
                let p00 = self.get(x0, y0) as f32;
                let p01 = self.get(x1, y0) as f32;
                let p10 = self.get(x0, y1) as f32;
                let p11 = self.get(x1, y1) as f32;
                let top = p00 + (p01 - p00) * wx;
                let bot = p10 + (p11 - p10) * wx;
                out[y * new_w + x] = (top + (bot - top) * wy).round().clamp(0.0, 255.0) as u8;
            }
        }
        Frame {
            width: new_w,
            height: new_h,
            pixels: out,
            t: self.t,
        }
    }

    /// Crop `rect` clamped to the frame; returns the clamped crop.
    pub fn crop_clamped(&self, rect: &BoundingBox) -> Result<Frame> {
        let (x0, y0, x1, y1) = rect.clamped_bounds(self.width, self.height)?;
        let (cw, ch) = (x1 - x0, y1 - y0);
        let mut pixels = Vec::with_capacity(cw * ch);
        for y in y0..y1 {
            let row = &self.pixels[y * self.width + x0..y * self.width + x1];
            pixels.extend_from_slice(row);
        }
        Ok(Frame {
            width: cw,
            height: ch,
            pixels,
            t: self.t,
        })
    }
}

/// An ordered sequence of same-sized frames.
#[derive(Debug, Clone)]
pub struct FrameSequence {
    pub frames: Vec<Frame>,
    pub fps: u32,
    pub scene_id: String,
}

impl FrameSequence {
    pub fn new(frames: Vec<Frame>, fps: u32, scene_id: impl Into<String>) -> Result<Self> {
        if let Some(first) = frames.first() {
            let (w, h) = (first.width, first.height);
            for f in &frames {
                if f.width != w || f.height != h {
                    return Err(Error::Dimension(format!(
                        "frame {} is {}x{}, expected {}x{}",
                        f.t, f.width, f.height, w, h
                    )));
                }
            }
        }
        for (i, f) in frames.iter().enumerate() {
            if f.t != i {
                return Err(Error::InvalidArgument(format!(
                    "frame ordinal {} at position {i}",
                    f.t
                )));
            }
        }
        Ok(FrameSequence {
            frames,
            fps,
            scene_id: scene_id.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn width(&self) -> usize {
        self.frames.first().map_or(0, |f| f.width)
    }

    pub fn height(&self) -> usize {
        self.frames.first().map_or(0, |f| f.height)
    }
}

/// Axis-aligned box; `x`/`y` is the top-left corner. May extend beyond the
/// frame (e.g. predicted positions); operations clamp where needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundingBox {
    pub x: i32,
    pub y: i32,
    pub w: i32,
    pub h: i32,
}

impl BoundingBox {
    pub fn new(x: i32, y: i32, w: i32, h: i32) -> Result<Self> {
        if w <= 0 || h <= 0 {
            return Err(Error::InvalidArgument(format!(
                "box {w}x{h} must have positive extent"
            )));
        }
        Ok(BoundingBox { x, y, w, h })
    }

    pub fn x2(&self) -> i32 {
        self.x + self.w
    }

    pub fn y2(&self) -> i32 {
        self.y + self.h
    }

    pub fn area(&self) -> i64 {
        self.w as i64 * self.h as i64
    }

    pub fn center(&self) -> (f64, f64) {
        (
            self.x as f64 + self.w as f64 / 2.0,
            self.y as f64 + self.h as f64 / 2.0,
        )
    }

    pub fn intersection_area(&self, other: &BoundingBox) -> i64 {
        let ix = (self.x2().min(other.x2()) - self.x.max(other.x)).max(0) as i64;
        let iy = (self.y2().min(other.y2()) - self.y.max(other.y)).max(0) as i64;
        ix * iy
    }

    /// Intersection over union, in [0, 1].
    pub fn iou(&self, other: &BoundingBox) -> f64 {
        let inter = self.intersection_area(other);
        if inter == 0 {
            return 0.0;
        }
        let union = self.area() + other.area() - inter;
        inter as f64 / union as f64
    }

    /// Grow by `pad` pixels on each side.
    pub fn padded(&self, pad: i32) -> BoundingBox {
        BoundingBox {
            x: self.x - pad,
            y: self.y - pad,
            w: self.w + 2 * pad,
            h: self.h + 2 * pad,
        }
    }

    /// Clamp to a `w`x`h` frame; errors when the intersection is empty.
    pub fn clamped_bounds(&self, w: usize, h: usize) -> Result<(usize, usize, usize, usize)> {
        let x0 = self.x.max(0) as usize;
        let y0 = self.y.max(0) as usize;
        let x1 = (self.x2().min(w as i32)).max(0) as usize;
        let y1 = (self.y2().min(h as i32)).max(0) as usize;
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::InvalidArgument(format!(
                "box ({},{},{},{}) does not intersect {}x{} frame",
                self.x, self.y, self.w, self.h, w, h
            )));
        }
        Ok((x0, y0, x1, y1))
    }
}

impl fmt::Display for BoundingBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.x, self.y, self.w, self.h)
    }
}

/// The three sub-action levels, in descriptor order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Posture,
    Locomotion,
    Gesture,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Posture, Level::Locomotion, Level::Gesture];

    pub fn index(self) -> usize {
        match self {
            Level::Posture => 0,
            Level::Locomotion => 1,
            Level::Gesture => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::Posture => "posture",
            Level::Locomotion => "locomotion",
            Level::Gesture => "gesture",
        }
    }

    pub fn from_name(name: &str) -> Result<Level> {
        match name {
            "posture" => Ok(Level::Posture),
            "locomotion" => Ok(Level::Locomotion),
            "gesture" => Ok(Level::Gesture),
            other => Err(Error::InvalidArgument(format!("unknown level '{other}'"))),
        }
    }
}

/// One label per descriptor level; `-` marks an unlabeled level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelTriple {
    pub posture: String,
    pub locomotion: String,
    pub gesture: String,
}

impl LabelTriple {
    pub fn new(
        posture: impl Into<String>,
        locomotion: impl Into<String>,
        gesture: impl Into<String>,
    ) -> Self {
        LabelTriple {
            posture: posture.into(),
            locomotion: locomotion.into(),
            gesture: gesture.into(),
        }
    }

    pub fn get(&self, level: Level) -> &str {
        match level {
            Level::Posture => &self.posture,
            Level::Locomotion => &self.locomotion,
            Level::Gesture => &self.gesture,
        }
    }

    pub fn set(&mut self, level: Level, label: impl Into<String>) {
        match level {
            Level::Posture => self.posture = label.into(),
            Level::Locomotion => self.locomotion = label.into(),
            Level::Gesture => self.gesture = label.into(),
        }
    }
}

/// Per-level label sets against which annotations are validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    levels: [Vec<String>; 3],
}

impl Vocabulary {
    pub fn new(posture: Vec<String>, locomotion: Vec<String>, gesture: Vec<String>) -> Self {
        Vocabulary {
            levels: [posture, locomotion, gesture],
        }
    }

    /// Default surveillance vocabulary.
    pub fn icvl() -> Self {
        Vocabulary::new(
            vec!["sitting".into(), "standing".into()],
            vec!["stationary".into(), "walking".into(), "running".into()],
            vec![
                "nothing".into(),
                "texting".into(),
                "smoking".into(),
                "others".into(),
            ],
        )
    }

    /// KTH-style vocabulary: one posture, jogging folded into walking.
    pub fn kth() -> Self {
        Vocabulary::new(
            vec!["standing".into()],
            vec!["stationary".into(), "walking".into(), "running".into()],
            vec![
                "boxing".into(),
                "hand-clapping".into(),
                "hand-waving".into(),
                "nothing".into(),
            ],
        )
    }

    pub fn labels(&self, level: Level) -> &[String] {
        &self.levels[level.index()]
    }

    pub fn label_index(&self, level: Level, label: &str) -> Option<usize> {
        self.levels[level.index()].iter().position(|l| l == label)
    }

    pub fn contains(&self, level: Level, label: &str) -> bool {
        label == UNLABELED || self.label_index(level, label).is_some()
    }

    pub fn validate_triple(&self, labels: &LabelTriple) -> Result<()> {
        for level in Level::ALL {
            let label = labels.get(level);
            if !self.contains(level, label) {
                return Err(Error::Data(format!(
                    "unknown {} label '{}'",
                    level.name(),
                    label
                )));
            }
        }
        Ok(())
    }
}

/// One annotated (frame, track) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub frame: usize,
    pub track_id: u64,
    pub bbox: BoundingBox,
    pub labels: LabelTriple,
}

const MANIFEST_NAME: &str = "sequence.txt";

/// Loads a frame-sequence directory: lexicographically ordered `.pgm`/`.png`
/// files plus a `sequence.txt` manifest with `fps=<int>` and `scene=<string>`.
pub fn load_sequence(dir: &Path) -> Result<FrameSequence> {
    let manifest = dir.join(MANIFEST_NAME);
    let text = fs::read_to_string(&manifest).map_err(|e| Error::io(&manifest, e))?;
    let mut fps = None;
    let mut scene = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('=') {
            Some(("fps", v)) => {
                fps = Some(v.trim().parse::<u32>().map_err(|_| {
                    Error::parse_line(&manifest, i + 1, format!("bad fps '{v}'"))
                })?);
            }
            Some(("scene", v)) => scene = Some(v.trim().to_string()),
            _ => {
                return Err(Error::parse_line(
                    &manifest,
                    i + 1,
                    format!("unrecognized manifest line '{line}'"),
                ))
            }
        }
    }
    let fps = fps.ok_or_else(|| Error::format(&manifest, "missing fps=<int>"))?;
    let scene = scene.ok_or_else(|| Error::format(&manifest, "missing scene=<string>"))?;

    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("pgm") | Some("png")
            )
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::format(dir, "no frames"));
    }

    let mut frames = Vec::with_capacity(files.len());
    let mut dims: Option<(usize, usize)> = None;
    for (t, path) in files.iter().enumerate() {
        let frame = load_frame(path, t)?;
        match dims {
            None => dims = Some((frame.width, frame.height)),
            Some((w, h)) if frame.width != w || frame.height != h => {
                return Err(Error::format(
                    path,
                    format!(
                        "frame is {}x{}, expected {}x{}",
                        frame.width, frame.height, w, h
                    ),
                ));
            }
            _ => {}
        }
        frames.push(frame);
    }
    FrameSequence::new(frames, fps, scene)
}

/// Loads one grayscale frame from a PGM or PNG file. Color PNG input is
/// reduced with the integer luma approximation `(77R + 150G + 29B) >> 8`.
pub fn load_frame(path: &Path, t: usize) -> Result<Frame> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("pgm") => read_pgm(path, t),
        Some("png") => {
            let img = image::open(path)
                .map_err(|e| Error::format(path, format!("unreadable image: {e}")))?;
            let (w, h) = (img.width() as usize, img.height() as usize);
            let pixels = match img {
                image::DynamicImage::ImageLuma8(g) => g.into_raw(),
                other => {
                    let rgb = other.to_rgb8();
                    rgb.pixels()
                        .map(|p| luma_u8(p.0[0], p.0[1], p.0[2]))
                        .collect()
                }
            };
            Frame::new(w, h, pixels, t)
        }
        _ => Err(Error::format(path, "unsupported frame extension")),
    }
}

/// Integer luma reduction used for all color input.
#[inline]
pub fn luma_u8(r: u8, g: u8, b: u8) -> u8 {
    ((77 * r as u32 + 150 * g as u32 + 29 * b as u32) >> 8) as u8
}

/// Reads a binary (P5) PGM file with maxval <= 255.
pub fn read_pgm(path: &Path, t: usize) -> Result<Frame> {
    let mut data = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut data))
        .map_err(|e| Error::io(path, e))?;
    let mut pos = 0usize;

    fn next_token(data: &[u8], pos: &mut usize) -> Option<String> {
        // skip whitespace and '#' comments
        loop {
            while *pos < data.len() && data[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < data.len() && data[*pos] == b'#' {
                while *pos < data.len() && data[*pos] != b'\n' {
                    *pos += 1;
                }
            } else {
                break;
            }
        }
        let start = *pos;
        while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        (start < *pos).then(|| String::from_utf8_lossy(&data[start..*pos]).into_owned())
    }

    let magic = next_token(&data, &mut pos).ok_or_else(|| Error::format(path, "empty file"))?;
    if magic != "P5" {
        return Err(Error::format(path, format!("bad magic '{magic}', want P5")));
    }
    let mut dims = [0usize; 3];
    for d in dims.iter_mut() {
        let tok =
            next_token(&data, &mut pos).ok_or_else(|| Error::format(path, "truncated header"))?;
        *d = tok
            .parse()
            .map_err(|_| Error::format(path, format!("bad header token '{tok}'")))?;
    }
    let (w, h, maxval) = (dims[0], dims[1], dims[2]);
    if maxval == 0 || maxval > 255 {
        return Err(Error::format(path, format!("unsupported maxval {maxval}")));
    }
    pos += 1; // single whitespace byte after maxval
    if data.len() < pos + w * h {
        return Err(Error::format(path, "truncated pixel data"));
    }
    Frame::new(w, h, data[pos..pos + w * h].to_vec(), t)
}

/// Writes a binary (P5) PGM file.
pub fn write_pgm(frame: &Frame, path: &Path) -> Result<()> {
    let mut f = BufWriter::new(fs::File::create(path).map_err(|e| Error::io(path, e))?);
    write!(f, "P5\n{} {}\n255\n", frame.width, frame.height).map_err(|e| Error::io(path, e))?;
    f.write_all(&frame.pixels).map_err(|e| Error::io(path, e))?;
    f.flush().map_err(|e| Error::io(path, e))
}

/// Writes a sequence directory (frames as PGM plus manifest).
pub fn write_sequence(seq: &FrameSequence, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let manifest = dir.join(MANIFEST_NAME);
    fs::write(&manifest, format!("fps={}\nscene={}\n", seq.fps, seq.scene_id))
        .map_err(|e| Error::io(&manifest, e))?;
    for frame in &seq.frames {
        write_pgm(frame, &dir.join(format!("frame_{:06}.pgm", frame.t)))?;
    }
    Ok(())
}

/// Parses an annotation file; records come back sorted by (frame, track_id)
/// with labels validated against `vocab`.
pub fn parse_annotations(path: &Path, vocab: &Vocabulary) -> Result<Vec<AnnotationRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 9 {
            return Err(Error::parse_line(
                path,
                line_no,
                format!("expected 9 fields, found {}", fields.len()),
            ));
        }
        let num = |idx: usize, what: &str| -> Result<i64> {
            fields[idx].parse::<i64>().map_err(|_| {
                Error::parse_line(path, line_no, format!("bad {what} '{}'", fields[idx]))
            })
        };
        let frame = num(0, "frame")? as usize;
        let track_id = num(1, "track id")? as u64;
        let bbox = BoundingBox::new(
            num(2, "x")? as i32,
            num(3, "y")? as i32,
            num(4, "w")? as i32,
            num(5, "h")? as i32,
        )
        .map_err(|e| Error::parse_line(path, line_no, e.to_string()))?;
        let labels = LabelTriple::new(fields[6], fields[7], fields[8]);
        for level in Level::ALL {
            let label = labels.get(level);
            if !vocab.contains(level, label) {
                return Err(Error::parse_line(
                    path,
                    line_no,
                    format!("unknown {} label '{label}'", level.name()),
                ));
            }
        }
        records.push(AnnotationRecord {
            frame,
            track_id,
            bbox,
            labels,
        });
    }
    records.sort_by_key(|r| (r.frame, r.track_id));
    Ok(records)
}

/// Writes annotation records as one line per (frame, track), sorted.
pub fn write_annotations(records: &[AnnotationRecord], path: &Path) -> Result<()> {
    let mut sorted: Vec<&AnnotationRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.frame, r.track_id));
    let mut f = BufWriter::new(fs::File::create(path).map_err(|e| Error::io(path, e))?);
    for r in sorted {
        writeln!(
            f,
            "{} {} {} {} {} {}",
            r.frame, r.track_id, r.bbox, r.labels.posture, r.labels.locomotion, r.labels.gesture
        )
        .map_err(|e| Error::io(path, e))?;
    }
    f.flush().map_err(|e| Error::io(path, e))
}

/// Groups records by frame for quick per-frame lookup.
pub fn annotations_by_frame(records: &[AnnotationRecord]) -> BTreeMap<usize, Vec<&AnnotationRecord>> {
    let mut map: BTreeMap<usize, Vec<&AnnotationRecord>> = BTreeMap::new();
    for r in records {
        map.entry(r.frame).or_default().push(r);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frame_rejects_bad_pixel_count() {
        assert!(Frame::new(4, 4, vec![0; 15], 0).is_err());
        assert!(Frame::new(4, 4, vec![0; 16], 0).is_ok());
    }

    #[test]
    fn sequence_of_identical_frames() {
        let frames = (0..3).map(|t| Frame::filled(4, 4, 9, t)).collect();
        let seq = FrameSequence::new(frames, 15, "s").unwrap();
        assert_eq!(seq.len(), 3);
        assert!(seq.frames.iter().all(|f| f.pixels().iter().all(|&p| p == 9)));
        // iteration order is strictly increasing t
        for (i, f) in seq.frames.iter().enumerate() {
            assert_eq!(f.t, i);
        }
    }

    #[test]
    fn load_sequence_empty_dir_is_error() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("sequence.txt"), "fps=15\nscene=s\n").unwrap();
        let err = load_sequence(dir.path()).unwrap_err();
        assert!(err.to_string().contains("no frames"), "{err}");
    }

    #[test]
    fn load_sequence_missing_manifest_is_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(load_sequence(dir.path()).is_err());
    }

    #[test]
    fn load_sequence_mixed_dimensions_reports_path() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("sequence.txt"), "fps=15\nscene=s\n").unwrap();
        write_pgm(&Frame::filled(4, 4, 1, 0), &dir.path().join("a.pgm")).unwrap();
        write_pgm(&Frame::filled(5, 4, 1, 1), &dir.path().join("b.pgm")).unwrap();
        let err = load_sequence(dir.path()).unwrap_err();
        assert!(err.to_string().contains("b.pgm"), "{err}");
    }

    #[test]
    fn load_sequence_640x320() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("sequence.txt"), "fps=15\nscene=cam01\n").unwrap();
        write_pgm(&Frame::filled(640, 320, 7, 0), &dir.path().join("f0.pgm")).unwrap();
        let seq = load_sequence(dir.path()).unwrap();
        assert_eq!((seq.width(), seq.height()), (640, 320));
        assert_eq!(seq.scene_id, "cam01");
    }

    #[test]
    fn pgm_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.pgm");
        let mut f = Frame::filled(7, 3, 0, 2);
        for (i, p) in f.pixels_mut().iter_mut().enumerate() {
            *p = (i * 13 % 256) as u8;
        }
        write_pgm(&f, &path).unwrap();
        let g = read_pgm(&path, 2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_single_annotation_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ann.txt");
        std::fs::write(&path, "0 7 10 20 30 60 standing walking nothing\n").unwrap();
        let recs = parse_annotations(&path, &Vocabulary::icvl()).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!((r.frame, r.track_id), (0, 7));
        assert_eq!(r.bbox, BoundingBox::new(10, 20, 30, 60).unwrap());
        assert_eq!(r.labels, LabelTriple::new("standing", "walking", "nothing"));
    }

    #[test]
    fn parse_rejects_unknown_label() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ann.txt");
        std::fs::write(&path, "0 7 10 20 30 60 standing flying nothing\n").unwrap();
        let err = parse_annotations(&path, &Vocabulary::icvl()).unwrap_err();
        assert!(err.to_string().contains("flying"), "{err}");
        assert!(err.to_string().contains(":1:"), "{err}");
    }

    #[test]
    fn parse_reports_malformed_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ann.txt");
        std::fs::write(
            &path,
            "0 1 10 20 30 60 standing walking nothing\n0 2 10 20\n",
        )
        .unwrap();
        let err = parse_annotations(&path, &Vocabulary::icvl()).unwrap_err();
        assert!(err.to_string().contains(":2:"), "{err}");
    }

    #[test]
    fn write_empty_list_gives_empty_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ann.txt");
        write_annotations(&[], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "");
    }

    fn label_strategy(level: Level) -> impl Strategy<Value = String> {
        let vocab = Vocabulary::icvl();
        let mut labels: Vec<String> = vocab.labels(level).to_vec();
        labels.push(UNLABELED.to_string());
        proptest::sample::select(labels)
    }

    fn record_strategy() -> impl Strategy<Value = AnnotationRecord> {
        (
            0usize..500,
            0u64..40,
            -50i32..600,
            -50i32..400,
            1i32..200,
            1i32..200,
            label_strategy(Level::Posture),
            label_strategy(Level::Locomotion),
            label_strategy(Level::Gesture),
        )
            .prop_map(|(frame, track_id, x, y, w, h, p, l, g)| AnnotationRecord {
                frame,
                track_id,
                bbox: BoundingBox { x, y, w, h },
                labels: LabelTriple::new(p, l, g),
            })
    }

    proptest! {
        #[test]
        fn annotation_round_trip(mut records in proptest::collection::vec(record_strategy(), 0..60)) {
            records.sort_by_key(|r| (r.frame, r.track_id));
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("ann.txt");
            write_annotations(&records, &path).unwrap();
            let parsed = parse_annotations(&path, &Vocabulary::icvl()).unwrap();
            prop_assert_eq!(parsed, records);
        }

        #[test]
        fn resize_identity(w in 1usize..24, h in 1usize..24, seed in 0u8..255) {
            let mut f = Frame::filled(w, h, 0, 0);
            for (i, p) in f.pixels_mut().iter_mut().enumerate() {
                *p = ((i as u32 * 31 + seed as u32 * 7) % 256) as u8;
            }
            let g = f.resize_bilinear(w, h);
            prop_assert_eq!(f, g);
        }
    }

    #[test]
    fn iou_basics() {
        let a = BoundingBox::new(0, 0, 2, 2).unwrap();
        let b = BoundingBox::new(1, 0, 2, 2).unwrap();
        assert!((a.iou(&b) - 2.0 / 6.0).abs() < 1e-12);
        assert_eq!(a.iou(&a), 1.0);
        let c = BoundingBox::new(10, 10, 2, 2).unwrap();
        assert_eq!(a.iou(&c), 0.0);
    }
}
