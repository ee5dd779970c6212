// shutterforge command-line front end.
//
// Every subcommand prints one JSON report {"command", "params", "results"} on
// stdout and writes tensors only to the paths given with --out. Exit status:
// 0 success, 1 computation error, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shutterforge/shutterforge.hpp"

namespace fs = std::filesystem;
namespace sf = shutterforge;
using json = nlohmann::ordered_json;

namespace {

/// Bad invocation detected after parsing (missing input file, flag mismatch).
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path)
{
  if (!fs::is_regular_file(path))
    throw UsageError("input file not found: " + path);
}

void require_dir(const std::string& path)
{
  if (!fs::is_directory(path))
    throw UsageError("input directory not found: " + path);
}

sf::Image read_image(const std::string& path)
{
  require_file(path);
  return sf::dataset::load_frame(path);
}

template <class T>
T read_tensor(const std::string& path)
{
  require_file(path);
  return sf::sft::read_as<T>(path);
}

sf::FrameSequence read_sequence(const std::vector<std::string>& paths)
{
  if (paths.empty())
    throw UsageError("empty frame list");
  std::vector<sf::Image> frames;
  for (const auto& p : paths)
    frames.push_back(read_image(p));
  return sf::FrameSequence(std::move(frames));
}

void ensure_parent(const fs::path& p)
{
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
}

void write_image(const fs::path& path, const sf::Image& img)
{
  ensure_parent(path);
  if (path.extension() == ".png")
    sf::png::export_image(path, img, 8);
  else
    sf::sft::write(path, img);
}

template <class T>
void write_tensor(const fs::path& path, const T& t)
{
  ensure_parent(path);
  sf::sft::write(path, t);
}

std::vector<double> parse_list(const std::string& s, std::size_t expected, const char* flag)
{
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.size() != expected)
    throw UsageError(std::string(flag) + ": expected " + std::to_string(expected) +
                     " comma-separated values");
  return out;
}

void emit(const std::string& command, json params, json results)
{
  json report;
  report["command"] = command;
  report["params"] = std::move(params);
  report["results"] = std::move(results);
  std::cout << report.dump(2) << std::endl;
}

char file_index_buf[32];
std::string indexed(const std::string& stem, std::size_t i)
{
  std::snprintf(file_index_buf, sizeof file_index_buf, "_%02zu.sft", i);
  return stem + file_index_buf;
}

// ---------------------------------------------------------------------------

struct SynthArgs
{
  std::string input;
  std::size_t exposure = 0;
  std::size_t deadtime = 0;
  std::size_t n_latent = 9;
  std::size_t crop = 0;
  std::uint64_t seed = 0;
  std::string ext = ".png";
  std::string out;
};

void run_synth(const SynthArgs& a)
{
  require_dir(a.input);
  const std::size_t exposure = a.exposure == 0 ? a.crop : a.exposure;
  const auto seq = sf::dataset::load_sequence(a.input, a.ext);
  const auto triples = sf::synthesis::synthesize_triples(
    seq, sf::synthesis::TripleConfig{exposure, a.deadtime, a.n_latent, a.crop});
  json windows = json::array();
  for (const auto& t : triples) {
    char name[32];
    std::snprintf(name, sizeof name, "w%06zu", t.window_start);
    const fs::path dir = fs::path(a.out) / name;
    write_image(dir / "blur.sft", t.blur);
    write_image(dir / "rs.sft", t.rs);
    for (std::size_t k = 0; k < t.gt.size(); ++k)
      write_image(dir / indexed("gt", k), t.gt[k]);
    windows.push_back(t.window_start);
  }
  emit("synth",
       {{"input", a.input}, {"exposure", exposure}, {"deadtime", a.deadtime},
        {"n_latent", a.n_latent}, {"crop", a.crop}, {"seed", a.seed}, {"out", a.out}},
       {{"frames", seq.size()}, {"triples", triples.size()}, {"window_starts", windows}});
}

// ---------------------------------------------------------------------------

struct PerturbArgs
{
  std::string kind;
  sf::perturb::PerturbSpec spec;
  std::string input;
  std::string manifest;
  std::string ext = ".png";
  std::size_t window_start = 0;
  std::string out;
};

json spec_params(const sf::perturb::PerturbSpec& s)
{
  return sf::dataset::to_json(s);
}

void run_perturb(PerturbArgs a)
{
  a.spec.kind = sf::perturb::kind_from_string(a.kind);
  a.spec.validate();
  json params = spec_params(a.spec);

  if (!a.manifest.empty()) {
    require_file(a.manifest);
    auto m = sf::dataset::load_manifest(a.manifest);
    for (std::size_t i = 0; i < m.scenes.size(); ++i) {
      auto& s = m.scenes[i];
      s.perturbations.push_back(a.spec);
      sf::dataset::plan_triples(s, i, m.seed);
      sf::dataset::check_scene_feasible(s);
    }
    sf::dataset::validate(m);
    ensure_parent(a.out);
    sf::dataset::save_manifest(a.out, m);
    params["manifest"] = a.manifest;
    params["out"] = a.out;
    emit("perturb", params, {{"scenes", m.scenes.size()}});
    return;
  }

  if (a.input.empty())
    throw UsageError("perturb needs an input tensor or --manifest");
  params["input"] = a.input;
  params["out"] = a.out;
  json results;
  switch (a.spec.kind) {
    case sf::perturb::Kind::spatial_shift: {
      const auto r = sf::perturb::spatial_shift(read_image(a.input), a.spec.max_offset, a.spec.seed);
      write_image(a.out, r.image);
      results = {{"dx", r.dx}, {"dy", r.dy}};
      break;
    }
    case sf::perturb::Kind::temporal_shift: {
      require_dir(a.input);
      const auto seq = sf::dataset::load_sequence(a.input, a.ext);
      const sf::ExposureSchedule window{seq.height(), 0, a.window_start};
      const auto r = sf::perturb::temporal_shift_rs(seq, window, a.spec.delta_lo, a.spec.delta_hi,
                                                    a.spec.seed);
      write_image(a.out, r.image);
      params["window_start"] = a.window_start;
      results = {{"delta", r.delta}};
      break;
    }
    case sf::perturb::Kind::low_light: {
      const auto r = sf::perturb::low_light(read_image(a.input), a.spec.peak, a.spec.gamma_lo,
                                            a.spec.gamma_hi, a.spec.seed);
      write_image(a.out, r.image);
      results = {{"gamma", r.gamma}};
      break;
    }
    case sf::perturb::Kind::stereo: {
      const auto img = read_image(a.input);
      const auto disparity =
        a.spec.disparity_path.empty()
          ? sf::MaskMap::filled(img.height(), img.width(), static_cast<float>(a.spec.disparity))
          : read_tensor<sf::MaskMap>(a.spec.disparity_path);
      write_image(a.out, sf::perturb::stereo_shift(img, disparity, a.spec.d_up));
      results = {{"d_up", a.spec.d_up}};
      break;
    }
  }
  emit("perturb", params, results);
}

// ---------------------------------------------------------------------------

struct EncodeArgs
{
  std::size_t height = 0;
  std::size_t width = 1;
  std::size_t n_latent = 0;
  std::string out = ".";
};

void run_encode(const EncodeArgs& a)
{
  const auto maps = sf::encoding::tpe_relative(a.height, a.n_latent, a.width);
  json files = json::array();
  for (std::size_t t = 0; t < maps.size(); ++t) {
    const fs::path p = fs::path(a.out) / indexed("tpe_rel", t);
    write_tensor(p, maps[t]);
    files.push_back(p.generic_string());
  }
  emit("encode", {{"height", a.height}, {"width", a.width}, {"n_latent", a.n_latent}, {"out", a.out}},
       {{"maps", maps.size()}, {"files", files}});
}

// ---------------------------------------------------------------------------

struct MaskArgs
{
  std::string flow_teacher;
  std::vector<std::string> gt;
  std::vector<std::string> student;
  std::vector<std::string> teacher;
  double k = sf::distill::default_outlier_k;
  std::string weights = "";
  std::string out;
};

double coverage(const sf::MaskMap& m)
{
  double acc = 0.0;
  for (float v : m.data())
    acc += v;
  return acc / static_cast<double>(m.size());
}

void run_mask(const MaskArgs& a)
{
  sf::distill::MaskWeights w;
  if (!a.weights.empty()) {
    const auto v = parse_list(a.weights, 3, "--weights");
    w = {v[0], v[1], v[2]};
  }
  w.validate();
  const auto flow = read_tensor<sf::FlowField>(a.flow_teacher);
  const auto gt = read_sequence(a.gt);
  const auto student = read_sequence(a.student);
  const auto teacher = read_sequence(a.teacher);

  const auto m_d = sf::distill::mask_dynamic(flow, a.k);
  const auto m_b = sf::distill::mask_boundary(gt);
  const auto m_e = sf::distill::mask_error(student, teacher, gt);
  const fs::path out(a.out);
  write_tensor(out / "m_d.sft", m_d);
  json frames = json::array();
  for (std::size_t t = 0; t < gt.size(); ++t) {
    const auto m = sf::distill::mask_combine(m_d, m_b[t], m_e[t], w);
    write_tensor(out / indexed("m_b", t), m_b[t]);
    write_tensor(out / indexed("m_e", t), m_e[t]);
    write_tensor(out / indexed("m", t), m);
    frames.push_back({{"m_b_mean", coverage(m_b[t])},
                      {"m_e_mean", coverage(m_e[t])},
                      {"m_mean", coverage(m)}});
  }
  emit("mask",
       {{"k", a.k}, {"weights", {w.w_d, w.w_b, w.w_e}}, {"out", a.out}},
       {{"m_d_mean", coverage(m_d)}, {"frames", frames}});
}

// ---------------------------------------------------------------------------

struct LossArgs
{
  std::vector<std::string> pred;
  std::vector<std::string> gt;
  std::vector<std::string> pred_teacher;
  std::vector<std::string> flow_student;
  std::vector<std::string> flow_teacher;
  std::string mask;
  double eps = sf::distill::default_charbonnier_eps;
  double lambda_d = sf::distill::default_lambda_d;
  std::string charbonnier = "elementwise";
};

void run_loss(const LossArgs& a)
{
  const auto mode = a.charbonnier == "global" ? sf::distill::CharbonnierMode::global
                                              : sf::distill::CharbonnierMode::elementwise;
  const auto gt = read_sequence(a.gt);
  json results;
  const double l_rec = sf::distill::loss_charbonnier(read_sequence(a.pred), gt, a.eps, mode);
  results["l_rec"] = l_rec;
  std::optional<double> l_rec_t;
  if (!a.pred_teacher.empty()) {
    l_rec_t = sf::distill::loss_charbonnier(read_sequence(a.pred_teacher), gt, a.eps, mode);
    results["l_rec_t"] = *l_rec_t;
  }
  std::optional<double> l_dis;
  if (!a.flow_student.empty() || !a.flow_teacher.empty()) {
    if (a.mask.empty())
      throw UsageError("--flow-student/--flow-teacher need --mask");
    std::vector<sf::FlowField> fs_, ft;
    for (const auto& p : a.flow_student)
      fs_.push_back(read_tensor<sf::FlowField>(p));
    for (const auto& p : a.flow_teacher)
      ft.push_back(read_tensor<sf::FlowField>(p));
    l_dis = sf::distill::loss_distill(fs_, ft, read_tensor<sf::MaskMap>(a.mask));
    results["l_dis"] = *l_dis;
  }
  if (l_rec_t && l_dis)
    results["l_total"] = sf::distill::loss_total(l_rec, *l_rec_t, *l_dis, a.lambda_d);
  emit("loss", {{"eps", a.eps}, {"lambda_d", a.lambda_d}, {"charbonnier", a.charbonnier}},
       results);
}

// ---------------------------------------------------------------------------

struct MetricArgs
{
  std::string metric;
  std::vector<std::string> inputs;
  std::vector<std::string> pred;
  std::vector<std::string> gt;
  std::optional<double> thr;
  double valid_min = sf::metrics::default_valid_min;
  double cap = sf::metrics::default_psnr_cap_db;
  std::size_t block = 8;
  std::size_t radius = 4;
  std::size_t column = 0;
  std::string out;
};

void run_metric(const MetricArgs& a)
{
  json params{{"metric", a.metric}};
  json results;
  auto pair = [&]() {
    if (a.inputs.size() != 2)
      throw UsageError("metric " + a.metric + " needs exactly two input images");
    return std::pair{read_image(a.inputs[0]), read_image(a.inputs[1])};
  };

  if (a.metric == "mse") {
    const auto [x, y] = pair();
    results["mse"] = sf::metrics::mse(x, y);
  } else if (a.metric == "psnr") {
    const auto [x, y] = pair();
    params["cap"] = a.cap;
    results["psnr"] = sf::metrics::psnr(x, y, a.cap);
  } else if (a.metric == "ssim") {
    const auto [x, y] = pair();
    results["ssim"] = sf::metrics::ssim(x, y);
  } else if (a.metric == "abs_rel") {
    const auto [x, y] = pair();
    params["valid_min"] = a.valid_min;
    results["abs_rel"] = sf::metrics::abs_rel(x, y, a.valid_min);
  } else if (a.metric == "delta") {
    const auto [x, y] = pair();
    params["valid_min"] = a.valid_min;
    std::vector<double> thresholds(sf::metrics::delta_thresholds.begin(),
                                   sf::metrics::delta_thresholds.end());
    if (a.thr) {
      thresholds = {*a.thr};
      params["thr"] = *a.thr;
    }
    for (double t : thresholds) {
      std::ostringstream key;
      key << "delta<" << t;
      results[key.str()] = sf::metrics::delta_accuracy(x, y, t, a.valid_min);
    }
  } else if (a.metric == "profile") {
    if (a.out.empty())
      throw UsageError("metric profile needs --out");
    const auto seq = read_sequence(a.inputs);
    const auto prof = sf::metrics::temporal_profile(seq, a.column);
    write_image(a.out, prof);
    params["column"] = a.column;
    params["out"] = a.out;
    results["profile"] = {{"height", prof.height()}, {"width", prof.width()}};
  } else if (a.metric == "tof") {
    params["block"] = a.block;
    params["radius"] = a.radius;
    results["tof"] = sf::metrics::tof(read_sequence(a.pred), read_sequence(a.gt), a.block, a.radius);
  } else {
    throw UsageError("unknown metric '" + a.metric + "'");
  }
  emit("metric", params, results);
}

// ---------------------------------------------------------------------------

struct DatasetArgs
{
  std::string source;
  std::string manifest;
  std::string perturbations;
  std::string fractions = "1,0,0";
  sf::dataset::IngestConfig cfg;
  std::uint64_t seed = 0;
  std::string out;
};

void run_ingest(DatasetArgs a)
{
  require_dir(a.source);
  if (a.cfg.exposure_len == 0)
    a.cfg.exposure_len = a.cfg.crop;
  if (!a.perturbations.empty()) {
    require_file(a.perturbations);
    const auto bytes = sf::sft::read_bytes(a.perturbations);
    json j;
    try {
      j = json::parse(bytes.begin(), bytes.end());
    } catch (const json::exception& e) {
      throw sf::ManifestError(a.perturbations + ": " + e.what());
    }
    for (const auto& p : j)
      a.cfg.perturbations.push_back(sf::dataset::perturb_spec_from_json(p));
  }
  const auto m = sf::dataset::ingest(a.source, a.cfg);
  ensure_parent(a.out);
  sf::dataset::save_manifest(a.out, m);
  json counts = json::object();
  std::size_t total = 0;
  for (const auto& s : m.scenes) {
    counts[s.scene_id] = s.triples.size();
    total += s.triples.size();
  }
  emit("dataset ingest",
       {{"source", a.source}, {"exposure", a.cfg.exposure_len}, {"deadtime", a.cfg.deadtime_len},
        {"n_latent", a.cfg.n_latent}, {"crop", a.cfg.crop}, {"seed", a.cfg.seed},
        {"ext", a.cfg.extension}, {"out", a.out}},
       {{"scenes", m.scenes.size()}, {"triples", total}, {"per_scene", counts},
        {"warnings", m.warnings}});
}

int run_materialize(const DatasetArgs& a)
{
  require_file(a.manifest);
  const auto m = sf::dataset::load_manifest(a.manifest);
  const auto r = sf::dataset::materialize(m, a.out);
  emit("dataset materialize", {{"manifest", a.manifest}, {"out", a.out}},
       {{"written", r.written}, {"skipped", r.skipped}, {"errors", r.errors}});
  return r.ok() ? 0 : 1;
}

void run_split(const DatasetArgs& a)
{
  require_file(a.manifest);
  const auto f = parse_list(a.fractions, 3, "--fractions");
  auto m = sf::dataset::split_scenes(sf::dataset::load_manifest(a.manifest), {f[0], f[1], f[2]},
                                     a.seed);
  ensure_parent(a.out);
  sf::dataset::save_manifest(a.out, m);
  json counts{{"train", 0}, {"val", 0}, {"test", 0}};
  for (const auto& s : m.scenes)
    counts[s.split] = counts[s.split].get<int>() + 1;
  emit("dataset split",
       {{"manifest", a.manifest}, {"fractions", f}, {"seed", a.seed}, {"out", a.out}},
       {{"counts", counts}, {"warnings", m.warnings}});
}

void error_report(const char* type, const std::string& message)
{
  json e{{"error", {{"type", type}, {"message", message}}}};
  std::cerr << e.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"shutterforge: cross-shutter data synthesis, masks, losses and metrics"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Synthesize Blur/RS/GT triples from a frame directory");
  c_synth->add_option("input", synth.input, "Directory of high-speed frames")->required();
  c_synth->add_option("--exposure", synth.exposure, "Frames per exposure window (default: crop)");
  c_synth->add_option("--deadtime", synth.deadtime, "Frames between exposures");
  c_synth->add_option("--n-latent", synth.n_latent, "Latent target frames per window");
  c_synth->add_option("--crop", synth.crop, "Center crop size")->required();
  c_synth->add_option("--seed", synth.seed, "Seed (recorded)");
  c_synth->add_option("--ext", synth.ext, "Frame file extension (.png or .sft)");
  c_synth->add_option("--out", synth.out, "Output directory")->required();

  PerturbArgs pert;
  auto* c_pert = app.add_subcommand("perturb", "Apply one perturbation to a tensor or a manifest");
  c_pert->add_option("input", pert.input, "Input image (or frame directory for temporal_shift)");
  c_pert->add_option("--kind", pert.kind, "Perturbation kind")
    ->required()
    ->check(CLI::IsMember({"spatial_shift", "temporal_shift", "low_light", "stereo"}));
  c_pert->add_option("--seed", pert.spec.seed);
  c_pert->add_option("--max-offset", pert.spec.max_offset);
  c_pert->add_option("--delta-lo", pert.spec.delta_lo);
  c_pert->add_option("--delta-hi", pert.spec.delta_hi);
  c_pert->add_option("--peak", pert.spec.peak);
  c_pert->add_option("--gamma-lo", pert.spec.gamma_lo);
  c_pert->add_option("--gamma-hi", pert.spec.gamma_hi);
  c_pert->add_option("--d-up", pert.spec.d_up);
  c_pert->add_option("--disparity", pert.spec.disparity, "Constant disparity in [0, 1]");
  c_pert->add_option("--disparity-map", pert.spec.disparity_path, "Disparity MaskMap (SFT)");
  c_pert->add_option("--window-start", pert.window_start);
  c_pert->add_option("--ext", pert.ext);
  c_pert->add_option("--manifest", pert.manifest, "Append the perturbation to this manifest");
  c_pert->add_option("--out", pert.out)->required();

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Emit relative temporal positional encodings");
  c_enc->add_option("--height", enc.height)->required();
  c_enc->add_option("--n-latent", enc.n_latent)->required();
  c_enc->add_option("--width", enc.width);
  c_enc->add_option("--out", enc.out, "Output directory (default: current directory)");

  MaskArgs mask;
  auto* c_mask = app.add_subcommand("mask", "Compute dynamic/boundary/error masks and their combination");
  c_mask->add_option("--flow-teacher", mask.flow_teacher, "Teacher flow (SFT)")->required();
  c_mask->add_option("--gt", mask.gt, "Ground-truth frames")->required();
  c_mask->add_option("--student", mask.student, "Student-warped frames")->required();
  c_mask->add_option("--teacher", mask.teacher, "Teacher-warped frames")->required();
  c_mask->add_option("--k", mask.k);
  c_mask->add_option("--weights", mask.weights, "w_d,w_b,w_e");
  c_mask->add_option("--out", mask.out)->required();

  LossArgs loss;
  auto* c_loss = app.add_subcommand("loss", "Compute reconstruction, distillation and total losses");
  c_loss->add_option("--pred", loss.pred)->required();
  c_loss->add_option("--gt", loss.gt)->required();
  c_loss->add_option("--pred-teacher", loss.pred_teacher);
  c_loss->add_option("--flow-student", loss.flow_student);
  c_loss->add_option("--flow-teacher", loss.flow_teacher);
  c_loss->add_option("--mask", loss.mask);
  c_loss->add_option("--eps", loss.eps);
  c_loss->add_option("--lambda-d", loss.lambda_d);
  c_loss->add_option("--charbonnier", loss.charbonnier)
    ->check(CLI::IsMember({"elementwise", "global"}));

  MetricArgs met;
  auto* c_met = app.add_subcommand("metric", "Compute an image or sequence metric");
  c_met->add_option("--metric", met.metric)
    ->required()
    ->check(CLI::IsMember({"mse", "psnr", "ssim", "abs_rel", "delta", "profile", "tof"}));
  c_met->add_option("inputs", met.inputs, "Input images");
  c_met->add_option("--pred", met.pred, "Predicted frames (tof)");
  c_met->add_option("--gt", met.gt, "Ground-truth frames (tof)");
  c_met->add_option("--thr", met.thr);
  c_met->add_option("--valid-min", met.valid_min);
  c_met->add_option("--cap", met.cap);
  c_met->add_option("--block", met.block);
  c_met->add_option("--radius", met.radius);
  c_met->add_option("--column", met.column);
  c_met->add_option("--out", met.out);

  DatasetArgs ds;
  auto* c_ds = app.add_subcommand("dataset", "Dataset manifest operations");
  c_ds->require_subcommand(1);
  auto* c_ingest = c_ds->add_subcommand("ingest", "Scan a frame tree and write a manifest");
  c_ingest->add_option("--source", ds.source)->required();
  c_ingest->add_option("--exposure", ds.cfg.exposure_len);
  c_ingest->add_option("--deadtime", ds.cfg.deadtime_len);
  c_ingest->add_option("--n-latent", ds.cfg.n_latent);
  c_ingest->add_option("--crop", ds.cfg.crop)->required();
  c_ingest->add_option("--seed", ds.cfg.seed);
  c_ingest->add_option("--ext", ds.cfg.extension);
  c_ingest->add_option("--perturbations", ds.perturbations, "JSON array of perturbation specs");
  c_ingest->add_option("--out", ds.out)->required();
  auto* c_mat = c_ds->add_subcommand("materialize", "Write every tensor a manifest references");
  c_mat->add_option("--manifest", ds.manifest)->required();
  c_mat->add_option("--out", ds.out)->required();
  auto* c_split = c_ds->add_subcommand("split", "Assign scenes to train/val/test");
  c_split->add_option("--manifest", ds.manifest)->required();
  c_split->add_option("--fractions", ds.fractions, "train,val,test");
  c_split->add_option("--seed", ds.seed);
  c_split->add_option("--out", ds.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_synth)
      run_synth(synth);
    else if (*c_pert)
      run_perturb(pert);
    else if (*c_enc)
      run_encode(enc);
    else if (*c_mask)
      run_mask(mask);
    else if (*c_loss)
      run_loss(loss);
    else if (*c_met)
      run_metric(met);
    else if (*c_ingest)
      run_ingest(ds);
    else if (*c_mat)
      return run_materialize(ds);
    else if (*c_split)
      run_split(ds);
  } catch (const UsageError& e) {
    error_report("usage", e.what());
    return 2;
  } catch (const sf::Error& e) {
    error_report("computation", e.what());
    return 1;
  } catch (const std::exception& e) {
    error_report("internal", e.what());
    return 1;
  }
  return 0;
}
