// Command-line front end: phantom generation, mask/measurement synthesis,
// surrogate degradation, TV-TV reconstruction, evaluation, and Monte-Carlo
// validation of the inconsistency bound. Every stage appends a record to
// <out-dir>/manifest.json so a result directory documents how it was made.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "png_writer.hpp"
#include "tvtv/io.hpp"
#include "tvtv/metrics.hpp"
#include "tvtv/operators.hpp"
#include "tvtv/phantom.hpp"
#include "tvtv/rng.hpp"
#include "tvtv/solver.hpp"
#include "tvtv/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tvtv;

namespace {

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return std::string(buf);
}

class StageTimer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Appends one stage record to the manifest next to `out_base`.
void append_manifest(const std::string& out_base, const std::string& stage,
                     const json& params, const std::vector<std::string>& inputs,
                     const std::vector<std::string>& outputs, double wall_ms) {
  fs::path dir = fs::path(out_base).parent_path();
  if (dir.empty()) dir = ".";
  const fs::path manifest_path = dir / "manifest.json";

  json manifest;
  if (fs::exists(manifest_path)) {
    manifest = json::parse(read_binary_file(manifest_path.string()), nullptr, false);
    if (manifest.is_discarded() || !manifest.contains("stages"))
      throw IoError("manifest corrupted: " + manifest_path.string());
  } else {
    manifest = json{{"tool", "tvtv"}, {"version", kVersion}, {"stages", json::array()}};
  }
  manifest["stages"].push_back(json{{"stage", stage},
                                    {"params", params},
                                    {"inputs", inputs},
                                    {"outputs", outputs},
                                    {"version", kVersion},
                                    {"wall_ms", wall_ms}});
  write_text_file(manifest_path.string(), manifest.dump(2) + "\n");
}

MeasurementOperator load_operator(const std::string& mask_base, const std::string& sens_base) {
  SamplingMask mask = read_mask(mask_base);
  if (sens_base.empty()) return make_masked_fourier(std::move(mask));
  CoilSensitivities sens;
  sens.maps = read_coil_images(sens_base);
  return make_multicoil(std::move(mask), std::move(sens));
}

CropRegion parse_crop(const std::string& text, const ComplexImage& reference) {
  if (text == "auto") return support_bounding_box(reference);
  if (text == "full") return CropRegion::full(reference.rows(), reference.cols());
  long long r0 = 0, r1 = 0, c0 = 0, c1 = 0;
  if (std::sscanf(text.c_str(), "%lld:%lld/%lld:%lld", &r0, &r1, &c0, &c1) != 4)
    throw std::invalid_argument(
        "crop must be 'auto', 'full', or 'r0:r1/c0:c1' (half-open): " + text);
  const CropRegion crop{static_cast<Index>(r0), static_cast<Index>(r1),
                        static_cast<Index>(c0), static_cast<Index>(c1)};
  crop.validate(reference.rows(), reference.cols(), "evaluate");
  return crop;
}

ComplexImage cropped(const ComplexImage& img, const CropRegion& crop) {
  return img.block(crop.row_start, crop.col_start, crop.rows(), crop.cols());
}

// ---------------------------------------------------------------------------
// Stage option bundles. CLI11 fills these; callbacks run the stage.

struct PhantomArgs {
  Index rows = 0, cols = 0;
  std::string out;
};

void run_phantom(const PhantomArgs& a) {
  StageTimer timer;
  const ComplexImage x = shepp_logan(a.rows, a.cols);
  write_image(a.out, x);
  append_manifest(a.out, "phantom", json{{"rows", a.rows}, {"cols", a.cols}}, {},
                  {image_data_path(a.out), image_header_path(a.out)}, timer.elapsed_ms());
  std::printf("phantom: %lld x %lld written to %s\n", static_cast<long long>(a.rows),
              static_cast<long long>(a.cols), a.out.c_str());
}

struct MaskArgs {
  Index rows = 0, cols = 0;
  double accel = 4.0;
  Index center_lines = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_mask(const MaskArgs& a) {
  StageTimer timer;
  const SamplingMask mask = make_cartesian_mask(a.rows, a.cols, a.accel, a.center_lines, a.seed);
  write_mask(a.out, mask);
  append_manifest(a.out, "mask",
                  json{{"rows", a.rows},
                       {"cols", a.cols},
                       {"acceleration", a.accel},
                       {"center_lines", a.center_lines},
                       {"seed", a.seed}},
                  {}, {mask_data_path(a.out), mask_header_path(a.out)}, timer.elapsed_ms());
  std::printf("mask: kept %lld of %lld samples (achieved acceleration %.4g), hash %s\n",
              static_cast<long long>(mask.m), static_cast<long long>(mask.rows * mask.cols),
              mask.achieved_acceleration(), mask_hash(mask).c_str());
}

struct SensArgs {
  Index rows = 0, cols = 0, coils = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_sens(const SensArgs& a) {
  StageTimer timer;
  const CoilSensitivities sens = make_synthetic_sensitivities(a.rows, a.cols, a.coils, a.seed);
  write_coil_images(a.out, sens.maps);
  append_manifest(a.out, "sens",
                  json{{"rows", a.rows}, {"cols", a.cols}, {"coils", a.coils}, {"seed", a.seed}},
                  {}, {image_data_path(a.out), image_header_path(a.out)}, timer.elapsed_ms());
  std::printf("sens: %lld coil maps written to %s\n", static_cast<long long>(a.coils),
              a.out.c_str());
}

struct MeasureArgs {
  std::string image, mask, sens, out;
};

void run_measure(const MeasureArgs& a) {
  StageTimer timer;
  const ComplexImage x = read_image(a.image);
  const SamplingMask mask = read_mask(a.mask);
  const MeasurementOperator op = load_operator(a.mask, a.sens);
  op.require_image_shape(x, "measure");
  const ComplexVector b = op.forward(x);
  write_measurement(a.out, b, mask_hash(mask), op.kind());
  std::vector<std::string> inputs = {image_data_path(a.image), mask_data_path(a.mask)};
  if (!a.sens.empty()) inputs.push_back(image_data_path(a.sens));
  append_manifest(a.out, "measure", json{{"operator", to_string(op.kind())}}, inputs,
                  {measurement_data_path(a.out), measurement_header_path(a.out)},
                  timer.elapsed_ms());
  std::printf("measure: %lld samples (operator %s) written to %s\n",
              static_cast<long long>(b.size()), to_string(op.kind()).c_str(), a.out.c_str());
}

struct DegradeArgs {
  std::string image, mask, sens, out;
  std::string kind = "blur";
  double sigma = 1.5;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
};

void run_degrade(const DegradeArgs& a) {
  StageTimer timer;
  const ComplexImage x = read_image(a.image);
  const DegradeKind kind = degrade_kind_from_string(a.kind);
  std::optional<MeasurementOperator> op;
  if (!a.mask.empty()) op.emplace(load_operator(a.mask, a.sens));
  DegradeParams params;
  params.sigma = a.sigma;
  params.noise_level = a.noise_level;
  const ComplexImage w =
      degrade_surrogate(x, op ? &*op : nullptr, kind, params, a.seed);
  write_image(a.out, w);
  append_manifest(a.out, "degrade",
                  json{{"kind", a.kind},
                       {"sigma", a.sigma},
                       {"noise_level", a.noise_level},
                       {"seed", a.seed}},
                  {image_data_path(a.image)},
                  {image_data_path(a.out), image_header_path(a.out)}, timer.elapsed_ms());
  std::printf("degrade: %s surrogate written to %s\n", a.kind.c_str(), a.out.c_str());
}

struct ReconstructArgs {
  std::string surrogate, measurement, mask, sens, out, trace, preset;
  double beta = 1.0, rho = 1.0, eps_abs = 1e-8, eps_rel = 1e-6, cg_tol = 1e-10;
  int max_iters = 100, cg_max_iters = 500;
};

void run_reconstruct(const ReconstructArgs& a, const CLI::App* cmd) {
  StageTimer timer;
  const ComplexImage w = read_image(a.surrogate);
  const SamplingMask mask = read_mask(a.mask);
  const MeasurementRecord rec = read_measurement(a.measurement);

  const std::string have_hash = mask_hash(mask);
  if (rec.mask_hash != have_hash)
    throw std::invalid_argument(
        "measurement/mask mismatch: measurement was taken under mask " + rec.mask_hash +
        " but the supplied mask hashes to " + have_hash);
  const bool multicoil = rec.kind == OperatorKind::MulticoilMaskedFourier;
  if (multicoil && a.sens.empty())
    throw std::invalid_argument(
        "measurement/operator mismatch: multicoil measurement requires --sens");
  if (!multicoil && !a.sens.empty())
    throw std::invalid_argument(
        "measurement/operator mismatch: --sens given for a single-coil measurement");

  const MeasurementOperator op = load_operator(a.mask, a.sens);
  op.require_image_shape(w, "reconstruct");
  op.require_measurement_length(rec.b, "reconstruct");

  SolverConfig cfg;
  if (a.preset == "crnn") cfg = SolverConfig::crnn_preset();
  if (cmd->count("--beta")) cfg.beta = a.beta;
  if (cmd->count("--rho")) cfg.rho = a.rho;
  if (cmd->count("--max-iters")) cfg.max_iters = a.max_iters;
  if (cmd->count("--eps-abs")) cfg.eps_abs = a.eps_abs;
  if (cmd->count("--eps-rel")) cfg.eps_rel = a.eps_rel;
  if (cmd->count("--cg-tol")) cfg.cg_tol = a.cg_tol;
  if (cmd->count("--cg-max-iters")) cfg.cg_max_iters = a.cg_max_iters;

  const SolverResult result = solve_tvtv(op, rec.b, w, cfg);
  write_image(a.out, result.x_hat);
  std::vector<std::string> outputs = {image_data_path(a.out), image_header_path(a.out)};
  if (!a.trace.empty()) {
    write_trace_csv(a.trace, result);
    outputs.push_back(a.trace);
  }

  const double final_consistency = consistency(op, result.x_hat, rec.b);
  const double b_norm = rec.b.norm();
  append_manifest(a.out, "reconstruct",
                  json{{"beta", cfg.beta},
                       {"rho", cfg.rho},
                       {"max_iters", cfg.max_iters},
                       {"eps_abs", cfg.eps_abs},
                       {"eps_rel", cfg.eps_rel},
                       {"preset", a.preset.empty() ? "none" : a.preset},
                       {"iterations_run", result.iterations_run},
                       {"termination", to_string(result.termination_reason)}},
                  {image_data_path(a.surrogate), measurement_data_path(a.measurement),
                   mask_data_path(a.mask)},
                  outputs, timer.elapsed_ms());

  std::printf("reconstruct: %s after %d iterations\n",
              to_string(result.termination_reason).c_str(), result.iterations_run);
  std::printf("objective: %.9g\n", result.objective_trace.back());
  std::printf("consistency: %.9g (relative %.9g)\n", final_consistency,
              b_norm > 0.0 ? final_consistency / b_norm : final_consistency);
  if (!result.converged)
    std::fprintf(stderr, "warning: stopped at the iteration cap before reaching tolerance\n");
}

struct EvaluateArgs {
  std::string ref, mask, sens, measurement, out, png_dir;
  std::vector<std::string> tests;
  std::string crop = "auto";
};

void run_evaluate(const EvaluateArgs& a) {
  StageTimer timer;
  const ComplexImage ref = read_image(a.ref);
  const CropRegion crop = parse_crop(a.crop, ref);

  std::optional<MeasurementOperator> op;
  ComplexVector b;
  if (!a.measurement.empty()) {
    if (a.mask.empty())
      throw std::invalid_argument("evaluate: --measurement requires --mask");
    const MeasurementRecord rec = read_measurement(a.measurement);
    op.emplace(load_operator(a.mask, a.sens));
    const std::string have_hash = mask_hash(op->mask());
    if (rec.mask_hash != have_hash)
      throw std::invalid_argument(
          "measurement/mask mismatch: measurement was taken under mask " + rec.mask_hash +
          " but the supplied mask hashes to " + have_hash);
    op->require_measurement_length(rec.b, "evaluate");
    b = rec.b;
  }

  const std::string crop_text =
      fmt("%lld:%lld/%lld:%lld", static_cast<long long>(crop.row_start),
          static_cast<long long>(crop.row_end), static_cast<long long>(crop.col_start),
          static_cast<long long>(crop.col_end));

  if (!a.png_dir.empty()) fs::create_directories(a.png_dir);
  const double ref_peak = magnitude(cropped(ref, crop)).maxCoeff();
  if (!a.png_dir.empty())
    write_magnitude_png((fs::path(a.png_dir) / "reference.png").string(),
                        cropped(ref, crop), ref_peak);

  std::string csv = "case,psnr,ssim,consistency,crop\n";
  std::vector<double> psnrs, ssims, consistencies;
  for (const std::string& test_base : a.tests) {
    const ComplexImage test = read_image(test_base);
    require_same_shape(ref, test, "evaluate");
    const double p = psnr(ref, test, crop);
    const double s = ssim(ref, test, crop);
    double cons = std::numeric_limits<double>::quiet_NaN();
    if (op) {
      cons = consistency(*op, test, b);
      consistencies.push_back(cons);
    }
    psnrs.push_back(p);
    ssims.push_back(s);
    const std::string name = fs::path(test_base).filename().string();
    csv += fmt("%s,%.9g,%.9g,%.9g,%s\n", name.c_str(), p, s, cons, crop_text.c_str());
    if (!a.png_dir.empty()) {
      write_magnitude_png((fs::path(a.png_dir) / (name + ".png")).string(),
                          cropped(test, crop), ref_peak);
      const ComplexImage diff = cropped(test, crop) - cropped(ref, crop);
      write_magnitude_png((fs::path(a.png_dir) / (name + "-diff.png")).string(), diff,
                          ref_peak);
    }
  }
  write_text_file(a.out, csv);

  std::vector<std::string> inputs = {image_data_path(a.ref)};
  for (const std::string& t : a.tests) inputs.push_back(image_data_path(t));
  append_manifest(a.out, "evaluate",
                  json{{"crop", crop_text}, {"cases", a.tests.size()}}, inputs, {a.out},
                  timer.elapsed_ms());

  std::printf("cases: %zu, crop %s\n", a.tests.size(), crop_text.c_str());
  std::printf("psnr: %s dB\n", format_summary(psnrs).c_str());
  std::printf("ssim: %s\n", format_summary(ssims).c_str());
  if (!consistencies.empty())
    std::printf("consistency: %s\n", format_summary(consistencies).c_str());
}

struct BoundCheckArgs {
  std::string model = "zero-filled";
  Index rows = 0, cols = 0;
  double accel = 2.0;
  Index center_lines = 0;
  std::uint64_t mask_seed = 0;
  std::string sampler = "gaussian";
  double sigma = 1.5, perturb_scale = 0.25, smooth_sigma = 2.0;
  int trials = 0;
  std::vector<double> deltas;
  std::uint64_t seed = 0;
  std::string out;
};

void run_boundcheck(const BoundCheckArgs& a) {
  StageTimer timer;
  if (a.trials < 100)
    throw std::invalid_argument(
        fmt("boundcheck: trials must be at least 100 (got %d)", a.trials));

  const SamplingMask mask =
      make_cartesian_mask(a.rows, a.cols, a.accel, a.center_lines, a.mask_seed);
  const MeasurementOperator op = make_masked_fourier(mask);

  SurrogateModel model = SurrogateModel::parse(a.model);
  model.sigma = a.sigma;
  model.perturb_scale = a.perturb_scale;
  model.seed = mix_seed(a.seed, 0x6d6f64656cull);
  ImageSampler sampler = ImageSampler::parse(a.sampler, a.rows, a.cols);
  sampler.smooth_sigma = a.smooth_sigma;

  const BoundCheckReport report =
      run_bound_check(op, model, sampler, a.deltas, a.trials, a.seed);

  std::string csv = "delta,empirical,bound,margin,status\n";
  for (const BoundCheckRow& row : report.rows)
    csv += fmt("%.9g,%.9g,%.9g,%.9g,%s\n", row.delta, row.empirical, row.bound, row.margin,
               row.skipped ? "skipped" : (row.pass ? "pass" : "fail"));
  write_text_file(a.out, csv);
  append_manifest(a.out, "boundcheck",
                  json{{"model", report.model_name},
                       {"sampler", report.sampler_name},
                       {"rows", a.rows},
                       {"cols", a.cols},
                       {"acceleration", a.accel},
                       {"trials", a.trials},
                       {"seed", a.seed},
                       {"applicable", report.applicable}},
                  {}, {a.out}, timer.elapsed_ms());

  std::printf("model: %s, sampler: %s, trials: %d, seed: %llu\n", report.model_name.c_str(),
              report.sampler_name.c_str(), report.trials,
              static_cast<unsigned long long>(report.seed));
  if (report.applicable) {
    std::printf("estimates: c = %.9g, epsilon = %.9g, C = %.9g, margin = %.9g\n",
                report.c_hat, report.epsilon_hat, report.c_bound_hat, report.margin);
  } else {
    std::printf("bound not applicable: surrogate reproduces the measurements exactly\n");
  }
  for (const BoundCheckRow& row : report.rows) {
    if (row.skipped)
      std::printf("delta %.6g: skipped (%s)\n", row.delta, row.note.c_str());
    else
      std::printf("delta %.6g: empirical %.6g vs bound %.6g - margin %.6g: %s\n", row.delta,
                  row.empirical, row.bound, row.margin, row.pass ? "pass" : "FAIL");
  }
  std::printf("boundcheck: %s\n", report.overall_pass ? "pass" : "FAIL");
  if (!report.overall_pass) throw std::runtime_error("boundcheck: empirical bound violated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TV-TV post-processing for undersampled Fourier measurements"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  PhantomArgs phantom_args;
  CLI::App* phantom = app.add_subcommand("phantom", "write the reference head phantom");
  phantom->add_option("--rows", phantom_args.rows, "image rows")->required();
  phantom->add_option("--cols", phantom_args.cols, "image columns")->required();
  phantom->add_option("--out", phantom_args.out, "output image base path")->required();
  phantom->callback([&] { run_phantom(phantom_args); });

  MaskArgs mask_args;
  CLI::App* mask = app.add_subcommand("mask", "draw a Cartesian row-undersampling mask");
  mask->add_option("--rows", mask_args.rows, "k-space rows")->required();
  mask->add_option("--cols", mask_args.cols, "k-space columns")->required();
  mask->add_option("--accel", mask_args.accel, "target acceleration factor")->required();
  mask->add_option("--center-lines", mask_args.center_lines,
                   "fully sampled rows around zero frequency")
      ->required();
  mask->add_option("--seed", mask_args.seed, "rng seed")->required();
  mask->add_option("--out", mask_args.out, "output mask base path")->required();
  mask->callback([&] { run_mask(mask_args); });

  SensArgs sens_args;
  CLI::App* sens = app.add_subcommand("sens", "write synthetic coil sensitivity maps");
  sens->add_option("--rows", sens_args.rows, "image rows")->required();
  sens->add_option("--cols", sens_args.cols, "image columns")->required();
  sens->add_option("--coils", sens_args.coils, "number of coils")->required();
  sens->add_option("--seed", sens_args.seed, "rng seed")->required();
  sens->add_option("--out", sens_args.out, "output coil-set base path")->required();
  sens->callback([&] { run_sens(sens_args); });

  MeasureArgs measure_args;
  CLI::App* measure = app.add_subcommand("measure", "sample k-space through a mask");
  measure->add_option("--image", measure_args.image, "input image base path")->required();
  measure->add_option("--mask", measure_args.mask, "mask base path")->required();
  measure->add_option("--sens", measure_args.sens, "coil sensitivity base path (multicoil)");
  measure->add_option("--out", measure_args.out, "output measurement base path")->required();
  measure->callback([&] { run_measure(measure_args); });

  DegradeArgs degrade_args;
  CLI::App* degrade = app.add_subcommand("degrade", "produce an approximate surrogate image");
  degrade->add_option("--image", degrade_args.image, "input image base path")->required();
  degrade->add_option("--kind", degrade_args.kind, "blur | zero-filled | blur-noise")
      ->required();
  degrade->add_option("--sigma", degrade_args.sigma, "gaussian blur width in pixels");
  degrade->add_option("--noise-level", degrade_args.noise_level,
                      "relative complex noise amplitude (blur-noise)");
  degrade->add_option("--seed", degrade_args.seed, "rng seed (blur-noise)");
  degrade->add_option("--mask", degrade_args.mask, "mask base path (zero-filled)");
  degrade->add_option("--sens", degrade_args.sens, "coil sensitivity base path");
  degrade->add_option("--out", degrade_args.out, "output image base path")->required();
  degrade->callback([&] { run_degrade(degrade_args); });

  ReconstructArgs rec_args;
  CLI::App* rec = app.add_subcommand("reconstruct", "solve the TV-TV consistency problem");
  rec->add_option("--surrogate", rec_args.surrogate, "surrogate image base path")->required();
  rec->add_option("--measurement", rec_args.measurement, "measurement base path")->required();
  rec->add_option("--mask", rec_args.mask, "mask base path")->required();
  rec->add_option("--sens", rec_args.sens, "coil sensitivity base path (multicoil)");
  rec->add_option("--beta", rec_args.beta, "surrogate-fidelity weight");
  rec->add_option("--rho", rec_args.rho, "ADMM penalty");
  rec->add_option("--max-iters", rec_args.max_iters, "iteration cap");
  rec->add_option("--eps-abs", rec_args.eps_abs, "absolute stopping tolerance");
  rec->add_option("--eps-rel", rec_args.eps_rel, "relative stopping tolerance");
  rec->add_option("--cg-tol", rec_args.cg_tol, "inner CG tolerance");
  rec->add_option("--cg-max-iters", rec_args.cg_max_iters, "inner CG iteration cap");
  rec->add_option("--preset", rec_args.preset, "named configuration")
      ->check(CLI::IsMember({"crnn"}));
  rec->add_option("--out", rec_args.out, "output image base path")->required();
  rec->add_option("--trace", rec_args.trace, "per-iteration diagnostics CSV path");
  rec->callback([&] { run_reconstruct(rec_args, rec); });

  EvaluateArgs eval_args;
  CLI::App* eval = app.add_subcommand("evaluate", "score reconstructions against a reference");
  eval->add_option("--ref", eval_args.ref, "reference image base path")->required();
  eval->add_option("--test", eval_args.tests, "image base path to score (repeatable)")
      ->required();
  eval->add_option("--mask", eval_args.mask, "mask base path (for consistency)");
  eval->add_option("--sens", eval_args.sens, "coil sensitivity base path");
  eval->add_option("--measurement", eval_args.measurement,
                   "measurement base path (for consistency)");
  eval->add_option("--crop", eval_args.crop, "auto | full | r0:r1/c0:c1");
  eval->add_option("--png-dir", eval_args.png_dir, "directory for 8-bit magnitude PNGs");
  eval->add_option("--out", eval_args.out, "per-case CSV path")->required();
  eval->callback([&] { run_evaluate(eval_args); });

  BoundCheckArgs bc_args;
  CLI::App* bc = app.add_subcommand(
      "boundcheck", "Monte-Carlo validation of the inconsistency probability bound");
  bc->add_option("--model", bc_args.model,
                 "zero-filled | blurred-adjoint | perturbed-adjoint | zero-map")
      ->required();
  bc->add_option("--rows", bc_args.rows, "image rows")->required();
  bc->add_option("--cols", bc_args.cols, "image columns")->required();
  bc->add_option("--accel", bc_args.accel, "mask acceleration")->required();
  bc->add_option("--center-lines", bc_args.center_lines, "fully sampled center rows")
      ->required();
  bc->add_option("--mask-seed", bc_args.mask_seed, "mask rng seed");
  bc->add_option("--sampler", bc_args.sampler, "gaussian | smooth-gaussian");
  bc->add_option("--sigma", bc_args.sigma, "blurred-adjoint blur width");
  bc->add_option("--perturb-scale", bc_args.perturb_scale, "perturbed-adjoint amplitude");
  bc->add_option("--smooth-sigma", bc_args.smooth_sigma, "smooth-gaussian sampler width");
  bc->add_option("--trials", bc_args.trials, "Monte-Carlo trials (minimum 100)")->required();
  bc->add_option("--deltas", bc_args.deltas, "thresholds (default 0.25/0.5/0.75 of c+eps)")
      ->delimiter(',');
  bc->add_option("--seed", bc_args.seed, "trial rng seed")->required();
  bc->add_option("--out", bc_args.out, "output CSV path")->required();
  bc->callback([&] { run_boundcheck(bc_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
