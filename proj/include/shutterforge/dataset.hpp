#ifndef SHUTTERFORGE_DATASET_HPP
#define SHUTTERFORGE_DATASET_HPP

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "shutterforge/error.hpp"
#include "shutterforge/parallel.hpp"
#include "shutterforge/perturbation.hpp"
#include "shutterforge/png_io.hpp"
#include "shutterforge/rng.hpp"
#include "shutterforge/sft.hpp"
#include "shutterforge/synthesis.hpp"
#include "shutterforge/tensor.hpp"

namespace shutterforge::dataset {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

inline constexpr std::string_view manifest_version = "sfman/1";

struct Variant
{
  std::size_t spec_index = 0;
  std::uint64_t seed = 0;
  std::string path;

  friend bool operator==(const Variant&, const Variant&) = default;
};

struct Triple
{
  std::size_t window_start = 0;
  std::string blur_path;
  std::string rs_path;
  std::vector<std::string> gt_paths;
  std::vector<Variant> variants;

  friend bool operator==(const Triple&, const Triple&) = default;
};

struct Scene
{
  std::string scene_id;
  std::string source_dir;
  std::vector<std::string> frames;  // file names inside source_dir, in temporal order
  std::size_t frame_count = 0;
  std::size_t crop = 0;
  std::size_t exposure_len = 0;
  std::size_t deadtime_len = 0;
  std::size_t n_latent = 0;
  std::vector<perturb::PerturbSpec> perturbations;
  std::string split = "train";
  std::vector<Triple> triples;
};

struct Manifest
{
  std::string version{manifest_version};
  std::uint64_t seed = 0;
  std::vector<Scene> scenes;
  std::vector<std::string> warnings;
};

struct IngestConfig
{
  std::size_t exposure_len = 0;
  std::size_t deadtime_len = 0;
  std::size_t n_latent = 9;
  std::size_t crop = 0;
  std::vector<perturb::PerturbSpec> perturbations;
  std::uint64_t seed = 0;
  std::string extension = ".png";
};

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const perturb::PerturbSpec& p)
{
  json j;
  j["kind"] = std::string(perturb::to_string(p.kind));
  j["seed"] = p.seed;
  switch (p.kind) {
    case perturb::Kind::spatial_shift:
      j["max_offset"] = p.max_offset;
      break;
    case perturb::Kind::temporal_shift:
      j["delta_lo"] = p.delta_lo;
      j["delta_hi"] = p.delta_hi;
      break;
    case perturb::Kind::low_light:
      j["peak"] = p.peak;
      j["gamma_lo"] = p.gamma_lo;
      j["gamma_hi"] = p.gamma_hi;
      break;
    case perturb::Kind::stereo:
      j["d_up"] = p.d_up;
      j["disparity"] = p.disparity;
      if (!p.disparity_path.empty())
        j["disparity_path"] = p.disparity_path;
      break;
  }
  return j;
}

inline perturb::PerturbSpec perturb_spec_from_json(const json& j)
{
  perturb::PerturbSpec p;
  try {
    p.kind = perturb::kind_from_string(j.at("kind").get<std::string>());
    p.seed = j.value("seed", std::uint64_t{0});
    p.max_offset = j.value("max_offset", p.max_offset);
    p.delta_lo = j.value("delta_lo", p.delta_lo);
    p.delta_hi = j.value("delta_hi", p.delta_hi);
    p.peak = j.value("peak", p.peak);
    p.gamma_lo = j.value("gamma_lo", p.gamma_lo);
    p.gamma_hi = j.value("gamma_hi", p.gamma_hi);
    p.d_up = j.value("d_up", p.d_up);
    p.disparity = j.value("disparity", p.disparity);
    p.disparity_path = j.value("disparity_path", std::string{});
  } catch (const json::exception& e) {
    throw ManifestError(std::string("perturbation spec: ") + e.what());
  }
  p.validate();
  return p;
}

inline json to_json(const Manifest& m)
{
  json j;
  j["version"] = m.version;
  j["seed"] = m.seed;
  j["scenes"] = json::array();
  for (const auto& s : m.scenes) {
    json js;
    js["scene_id"] = s.scene_id;
    js["source_dir"] = s.source_dir;
    js["frame_count"] = s.frame_count;
    js["frames"] = s.frames;
    js["crop"] = s.crop;
    js["exposure_len"] = s.exposure_len;
    js["deadtime_len"] = s.deadtime_len;
    js["n_latent"] = s.n_latent;
    js["perturbations"] = json::array();
    for (const auto& p : s.perturbations)
      js["perturbations"].push_back(to_json(p));
    js["split"] = s.split;
    js["triples"] = json::array();
    for (const auto& t : s.triples) {
      json jt;
      jt["window_start"] = t.window_start;
      jt["blur_path"] = t.blur_path;
      jt["rs_path"] = t.rs_path;
      jt["gt_paths"] = t.gt_paths;
      jt["variants"] = json::array();
      for (const auto& v : t.variants)
        jt["variants"].push_back(
          json{{"spec_index", v.spec_index}, {"seed", v.seed}, {"path", v.path}});
      js["triples"].push_back(std::move(jt));
    }
    j["scenes"].push_back(std::move(js));
  }
  j["warnings"] = m.warnings;
  return j;
}

/// Checks the structural invariants: known version and split names,
/// non-overlapping increasing windows, consistent counts.
inline void validate(const Manifest& m)
{
  if (m.version != manifest_version)
    throw ManifestError("manifest: unsupported version '" + m.version + "'");
  for (const auto& s : m.scenes) {
    const std::string where = "manifest scene '" + s.scene_id + "': ";
    if (s.split != "train" && s.split != "val" && s.split != "test")
      throw ManifestError(where + "invalid split '" + s.split + "'");
    if (s.frames.size() != s.frame_count)
      throw ManifestError(where + "frame_count does not match frame list");
    if (s.exposure_len == 0 || s.n_latent < 2 || s.n_latent > s.exposure_len)
      throw ManifestError(where + "invalid exposure_len / n_latent");
    for (std::size_t i = 0; i < s.triples.size(); ++i) {
      const auto& t = s.triples[i];
      if (t.window_start + s.exposure_len > s.frame_count)
        throw ManifestError(where + "window " + std::to_string(i) + " exceeds frame count");
      if (i > 0 && t.window_start < s.triples[i - 1].window_start + s.exposure_len + s.deadtime_len)
        throw ManifestError(where + "window " + std::to_string(i) +
                            " overlaps its predecessor or is out of order");
      if (t.gt_paths.size() != s.n_latent)
        throw ManifestError(where + "window " + std::to_string(i) + " has wrong gt count");
      for (const auto& v : t.variants)
        if (v.spec_index >= s.perturbations.size())
          throw ManifestError(where + "variant references unknown perturbation");
    }
  }
}

inline Manifest manifest_from_json(const json& j)
{
  Manifest m;
  try {
    m.version = j.at("version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& js : j.at("scenes")) {
      Scene s;
      s.scene_id = js.at("scene_id").get<std::string>();
      s.source_dir = js.at("source_dir").get<std::string>();
      s.frame_count = js.at("frame_count").get<std::size_t>();
      s.frames = js.at("frames").get<std::vector<std::string>>();
      s.crop = js.at("crop").get<std::size_t>();
      s.exposure_len = js.at("exposure_len").get<std::size_t>();
      s.deadtime_len = js.at("deadtime_len").get<std::size_t>();
      s.n_latent = js.at("n_latent").get<std::size_t>();
      for (const auto& jp : js.at("perturbations"))
        s.perturbations.push_back(perturb_spec_from_json(jp));
      s.split = js.at("split").get<std::string>();
      for (const auto& jt : js.at("triples")) {
        Triple t;
        t.window_start = jt.at("window_start").get<std::size_t>();
        t.blur_path = jt.at("blur_path").get<std::string>();
        t.rs_path = jt.at("rs_path").get<std::string>();
        t.gt_paths = jt.at("gt_paths").get<std::vector<std::string>>();
        for (const auto& jv : jt.value("variants", json::array()))
          t.variants.push_back(Variant{jv.at("spec_index").get<std::size_t>(),
                                       jv.at("seed").get<std::uint64_t>(),
                                       jv.at("path").get<std::string>()});
        s.triples.push_back(std::move(t));
      }
      m.scenes.push_back(std::move(s));
    }
    m.warnings = j.value("warnings", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw ManifestError(std::string("manifest: ") + e.what());
  }
  validate(m);
  return m;
}

inline std::string dump(const Manifest& m)
{
  return to_json(m).dump(2) + "\n";
}

inline void save_manifest(const fs::path& path, const Manifest& m)
{
  const std::string text = dump(m);
  sft::write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline Manifest load_manifest(const fs::path& path)
{
  const auto bytes = sft::read_bytes(path);
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw ManifestError(path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

// ---------------------------------------------------------------------------
// Frames on disk

/// Natural ordering: digit runs compare numerically, everything else bytewise.
inline bool natural_less(std::string_view a, std::string_view b)
{
  std::size_t i = 0;
  std::size_t j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie]))
        ++ie;
      while (je < b.size() && digit(b[je]))
        ++je;
      auto na = a.substr(i, ie - i);
      auto nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0')
        na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0')
        nb.remove_prefix(1);
      if (na.size() != nb.size())
        return na.size() < nb.size();
      if (na != nb)
        return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j])
        return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j))
    return (a.size() - i) < (b.size() - j);
  return a < b;
}

/// Regular files in `dir` with the given extension, in natural order.
inline std::vector<std::string> list_frames(const fs::path& dir, std::string_view extension)
{
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == extension)
      names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end(),
            [](const std::string& a, const std::string& b) { return natural_less(a, b); });
  return names;
}

inline Image load_frame(const fs::path& path)
{
  if (path.extension() == ".sft")
    return sft::read_as<Image>(path);
  if (path.extension() == ".png")
    return png::import(path);
  throw IngestError("unsupported frame format: " + path.string());
}

inline Shape probe_frame(const fs::path& path)
{
  if (path.extension() == ".sft") {
    const auto [kind, shape] = sft::probe(path);
    if (kind != TensorKind::image)
      throw IngestError(path.string() + " is not an Image tensor");
    return shape;
  }
  if (path.extension() == ".png")
    return png::probe(path);
  throw IngestError("unsupported frame format: " + path.string());
}

/// Loads every frame of `dir` with `extension`, in natural order.
inline FrameSequence load_sequence(const fs::path& dir, std::string_view extension)
{
  const auto names = list_frames(dir, extension);
  if (names.empty())
    throw IngestError("no '" + std::string(extension) + "' frames in " + dir.string());
  std::vector<Image> frames;
  frames.reserve(names.size());
  for (const auto& n : names) {
    frames.push_back(load_frame(dir / n));
    if (frames.back().shape() != frames.front().shape())
      throw IngestError("frame " + (dir / n).string() + " has shape " +
                        to_string(frames.back().shape()) + ", expected " +
                        to_string(frames.front().shape()));
  }
  return FrameSequence(std::move(frames));
}

// ---------------------------------------------------------------------------
// Ingest

inline std::string window_dir(const std::string& scene_id, std::size_t start)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "w%06zu", start);
  return scene_id + "/" + buf;
}

inline std::uint64_t variant_seed(std::uint64_t spec_seed, std::uint64_t manifest_seed,
                                  std::size_t scene, std::size_t window)
{
  std::uint64_t h = rng::splitmix64(spec_seed);
  h = rng::splitmix64(h ^ manifest_seed);
  h = rng::splitmix64(h ^ scene);
  return rng::splitmix64(h ^ window);
}

/// Populates scene.triples (paths and variant seeds) from its synthesis parameters.
inline void plan_triples(Scene& scene, std::size_t scene_index, std::uint64_t manifest_seed)
{
  scene.triples.clear();
  const std::size_t count =
    synthesis::window_count(scene.frame_count, scene.exposure_len, scene.deadtime_len);
  const std::size_t stride = scene.exposure_len + scene.deadtime_len;
  for (std::size_t w = 0; w < count; ++w) {
    Triple t;
    t.window_start = w * stride;
    const std::string dir = window_dir(scene.scene_id, t.window_start);
    t.blur_path = dir + "/blur.sft";
    t.rs_path = dir + "/rs.sft";
    for (std::size_t k = 0; k < scene.n_latent; ++k) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "/gt_%02zu.sft", k);
      t.gt_paths.push_back(dir + buf);
    }
    for (std::size_t p = 0; p < scene.perturbations.size(); ++p) {
      const auto& spec = scene.perturbations[p];
      t.variants.push_back(Variant{
        p, variant_seed(spec.seed, manifest_seed, scene_index, w),
        dir + "/rs_" + std::string(perturb::to_string(spec.kind)) + "_" + std::to_string(p) + ".sft"});
    }
    scene.triples.push_back(std::move(t));
  }
}

/// Checks that every planned window can host its perturbations.
inline void check_scene_feasible(const Scene& s)
{
  for (const auto& spec : s.perturbations) {
    spec.validate();
    if (spec.kind == perturb::Kind::temporal_shift) {
      if (spec.delta_lo < 0)
        throw IngestError("scene '" + s.scene_id + "': temporal_shift delta_lo must be >= 0");
      for (const auto& t : s.triples) {
        const std::size_t need =
          t.window_start + static_cast<std::size_t>(spec.delta_hi) + s.exposure_len;
        if (need > s.frame_count)
          throw IngestError("scene '" + s.scene_id + "': temporal_shift with delta_hi " +
                            std::to_string(spec.delta_hi) + " needs " + std::to_string(need) +
                            " frames, scene has " + std::to_string(s.frame_count));
      }
    }
    if (spec.kind == perturb::Kind::spatial_shift &&
        static_cast<std::size_t>(spec.max_offset) >= s.crop)
      throw IngestError("scene '" + s.scene_id + "': spatial_shift max_offset must be below crop");
  }
}

/// Builds a manifest from a directory tree: one scene per subdirectory, or the
/// directory itself when it holds frames directly. Scenes without frames are
/// skipped with a warning.
inline Manifest ingest(const fs::path& source_dir, const IngestConfig& cfg)
{
  if (!fs::is_directory(source_dir))
    throw IngestError("source directory " + source_dir.string() + " does not exist");
  if (cfg.crop == 0 || cfg.exposure_len != cfg.crop)
    throw IngestError("exposure_len (" + std::to_string(cfg.exposure_len) +
                      ") must equal a non-zero crop (" + std::to_string(cfg.crop) + ")");
  if (cfg.n_latent < 2 || cfg.n_latent > cfg.exposure_len)
    throw IngestError("n_latent must be in [2, exposure_len]");

  std::vector<std::string> subdirs;
  for (const auto& e : fs::directory_iterator(source_dir))
    if (e.is_directory())
      subdirs.push_back(e.path().filename().string());
  std::sort(subdirs.begin(), subdirs.end(),
            [](const std::string& a, const std::string& b) { return natural_less(a, b); });

  std::vector<std::pair<std::string, fs::path>> scene_dirs;
  if (subdirs.empty())
    scene_dirs.emplace_back(source_dir.filename().string(), source_dir);
  else
    for (const auto& s : subdirs)
      scene_dirs.emplace_back(s, source_dir / s);

  Manifest m;
  m.seed = cfg.seed;
  for (const auto& [id, dir] : scene_dirs) {
    Scene s;
    s.scene_id = id;
    s.source_dir = dir.generic_string();
    s.frames = list_frames(dir, cfg.extension);
    if (s.frames.empty()) {
      m.warnings.push_back("scene '" + id + "': no '" + cfg.extension + "' frames, skipped");
      continue;
    }
    const Shape first = probe_frame(dir / s.frames.front());
    for (const auto& f : s.frames) {
      const Shape sh = probe_frame(dir / f);
      if (sh != first)
        throw IngestError("scene '" + id + "': frame " + (dir / f).generic_string() +
                          " has shape " + to_string(sh) + ", expected " + to_string(first));
    }
    if (cfg.crop > first.height || cfg.crop > first.width)
      throw IngestError("scene '" + id + "': crop " + std::to_string(cfg.crop) +
                        " exceeds frame shape " + to_string(first));
    s.frame_count = s.frames.size();
    if (s.frame_count < cfg.exposure_len)
      throw PipelineError("scene '" + id + "': need at least " + std::to_string(cfg.exposure_len) +
                          " frames, found " + std::to_string(s.frame_count));
    s.crop = cfg.crop;
    s.exposure_len = cfg.exposure_len;
    s.deadtime_len = cfg.deadtime_len;
    s.n_latent = cfg.n_latent;
    s.perturbations = cfg.perturbations;
    plan_triples(s, m.scenes.size(), cfg.seed);
    check_scene_feasible(s);
    m.scenes.push_back(std::move(s));
  }
  validate(m);
  return m;
}

// ---------------------------------------------------------------------------
// Materialize

struct MaterializeReport
{
  std::size_t written = 0;
  std::size_t skipped = 0;
  std::vector<std::string> errors;

  bool ok() const { return errors.empty(); }
};

namespace detail {

// Writes bytes unless the file already holds exactly these bytes.
// Returns true when the file was (re)written.
inline bool write_if_changed(const fs::path& path, const std::vector<std::uint8_t>& bytes)
{
  std::error_code ec;
  if (fs::is_regular_file(path, ec) && fs::file_size(path, ec) == bytes.size() && !ec) {
    if (sft::read_bytes(path) == bytes)
      return false;
  }
  fs::create_directories(path.parent_path());
  sft::write_bytes(path, bytes);
  return true;
}

inline Image apply_variant(const perturb::PerturbSpec& spec, std::uint64_t seed,
                           const FrameSequence& cropped, const ExposureSchedule& window,
                           const Image& rs)
{
  switch (spec.kind) {
    case perturb::Kind::spatial_shift:
      return perturb::spatial_shift(rs, spec.max_offset, seed).image;
    case perturb::Kind::temporal_shift:
      return perturb::temporal_shift_rs(cropped, window, spec.delta_lo, spec.delta_hi, seed).image;
    case perturb::Kind::low_light:
      return perturb::low_light(rs, spec.peak, spec.gamma_lo, spec.gamma_hi, seed).image;
    case perturb::Kind::stereo: {
      const MaskMap disparity = spec.disparity_path.empty()
                                  ? MaskMap::filled(rs.height(), rs.width(),
                                                    static_cast<float>(spec.disparity))
                                  : sft::read_as<MaskMap>(spec.disparity_path);
      return perturb::stereo_shift(rs, disparity, spec.d_up);
    }
  }
  throw ArgumentError("unknown perturbation kind");
}

}  // namespace detail

/// Loads a scene's source frames and center-crops them.
inline FrameSequence load_cropped_scene(const Scene& s)
{
  std::vector<Image> frames(s.frames.size());
  parallel_for(s.frames.size(), [&](std::size_t i) {
    frames[i] = synthesis::center_crop(load_frame(fs::path(s.source_dir) / s.frames[i]), s.crop);
  });
  return FrameSequence(std::move(frames));
}

/// Writes every tensor referenced by the manifest below out_dir, plus a copy
/// of the manifest itself. Files whose bytes are already correct are left
/// alone. Failures are collected per file and do not stop the run.
inline MaterializeReport materialize(const Manifest& m, const fs::path& out_dir)
{
  validate(m);
  MaterializeReport report;
  std::atomic<std::size_t> written{0};
  std::atomic<std::size_t> skipped{0};
  std::mutex error_mutex;
  auto record_error = [&](const std::string& what) {
    std::lock_guard lock(error_mutex);
    report.errors.push_back(what);
  };
  auto emit = [&](const std::string& rel, const std::vector<std::uint8_t>& bytes) {
    try {
      if (detail::write_if_changed(out_dir / rel, bytes))
        ++written;
      else
        ++skipped;
    } catch (const std::exception& e) {
      record_error(rel + ": " + e.what());
    }
  };

  for (const auto& scene : m.scenes) {
    std::optional<FrameSequence> cropped;
    try {
      cropped.emplace(load_cropped_scene(scene));
    } catch (const std::exception& e) {
      record_error("scene '" + scene.scene_id + "': " + e.what());
      continue;
    }
    parallel_for(scene.triples.size(), [&](std::size_t i) {
      const auto& t = scene.triples[i];
      const ExposureSchedule window{scene.exposure_len, scene.deadtime_len, t.window_start};
      try {
        const Image rs = synthesis::rs_synthesize(*cropped, window);
        emit(t.blur_path, sft::encode(synthesis::blur_synthesize(*cropped, window)));
        emit(t.rs_path, sft::encode(rs));
        const auto gt = synthesis::sample_latent_targets(*cropped, window, scene.n_latent);
        for (std::size_t k = 0; k < gt.size(); ++k)
          emit(t.gt_paths[k], sft::encode(gt[k]));
        for (const auto& v : t.variants) {
          try {
            emit(v.path, sft::encode(detail::apply_variant(scene.perturbations[v.spec_index],
                                                           v.seed, *cropped, window, rs)));
          } catch (const std::exception& e) {
            record_error(v.path + ": " + e.what());
          }
        }
      } catch (const std::exception& e) {
        record_error("scene '" + scene.scene_id + "' window " + std::to_string(t.window_start) +
                     ": " + e.what());
      }
    });
  }

  const std::string text = dump(m);
  emit("manifest.json", std::vector<std::uint8_t>(text.begin(), text.end()));

  std::sort(report.errors.begin(), report.errors.end());
  report.written = written;
  report.skipped = skipped;
  return report;
}

// ---------------------------------------------------------------------------
// Split

struct SplitFractions
{
  double train = 1.0;
  double val = 0.0;
  double test = 0.0;
};

/// Assigns whole scenes to train/val/test by a seeded shuffle. Counts are
/// round(f n) for train and val; test takes the remainder. A positive
/// fraction that yields zero scenes is honoured as zero with a warning.
inline Manifest split_scenes(Manifest m, const SplitFractions& f, std::uint64_t seed)
{
  for (double v : {f.train, f.val, f.test})
    if (!(v >= 0.0 && v <= 1.0))
      throw ArgumentError("split_scenes: fractions must lie in [0, 1]");
  if (std::abs(f.train + f.val + f.test - 1.0) > 1e-9)
    throw ArgumentError("split_scenes: fractions must sum to 1");

  const std::size_t n = m.scenes.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  rng::Stream s(seed, 0);
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[s.below(i)]);

  const auto n_train = std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(f.train * n)));
  const auto n_val =
    std::min<std::size_t>(n - n_train, static_cast<std::size_t>(std::llround(f.val * n)));
  const std::size_t n_test = n - n_train - n_val;

  auto warn_empty = [&](const char* name, double frac, std::size_t count) {
    if (frac > 0.0 && count == 0)
      m.warnings.push_back(std::string("split '") + name + "': fraction " + std::to_string(frac) +
                           " of " + std::to_string(n) + " scenes rounds to zero");
  };
  warn_empty("train", f.train, n_train);
  warn_empty("val", f.val, n_val);
  warn_empty("test", f.test, n_test);

  for (std::size_t i = 0; i < n; ++i)
    m.scenes[order[i]].split = i < n_train ? "train" : i < n_train + n_val ? "val" : "test";
  return m;
}

}  // namespace shutterforge::dataset

#endif  // SHUTTERFORGE_DATASET_HPP
