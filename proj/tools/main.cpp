#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "interlace/eigensolve.hpp"
#include "interlace/forward.hpp"
#include "interlace/interlacing.hpp"
#include "interlace/inverse.hpp"
#include "interlace/preimage.hpp"
#include "interlace/rng.hpp"
#include "json_format.hpp"
#include "problem_file.hpp"

namespace interlace::cli {

namespace {

using json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_interlacing:
    case ErrorCode::not_in_polytope:
      return 5;
    case ErrorCode::certificate_rejected:
      return 4;
    case ErrorCode::negative_weight:
    case ErrorCode::no_convergence:
    case ErrorCode::step_underflow:
    case ErrorCode::newton_divergence:
    case ErrorCode::boundary_point:
    case ErrorCode::not_hermitian:
      return 3;
    default:
      return 2;  // schema / precondition violations
  }
}

json vector_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json field_vector_json(const FieldVector& v) {
  if (v.field() == Field::real) return vector_json(v.real_entries());
  json out = json::array();
  for (const auto& z : v.entries()) out.push_back(json::array({z.real(), z.imag()}));
  return out;
}

json certificate_json(const SolveCertificate& cert) {
  json out;
  out["method"] = cert.method == SolveMethod::closed_form ? "closed_form" : "continuation";
  out["residual_spectrum"] = cert.residual_spectrum;
  out["residual_trace"] = cert.residual_trace;
  out["interlacing_ok"] = cert.interlacing_ok;
  out["accepting"] = cert.accepting;
  return out;
}

json face_profile_json(const FaceProfile& profile) {
  json touched = json::array();
  for (const auto& [coord, kind] : profile.touched) {
    json entry;
    entry["coord"] = static_cast<std::int64_t>(coord);
    entry["kind"] = kind == FaceKind::lower ? "lower" : "upper";
    touched.push_back(entry);
  }
  json out;
  out["touched"] = touched;
  out["k"] = static_cast<std::int64_t>(profile.k);
  return out;
}

const char* mode_name(PerturbationMode mode) {
  return mode == PerturbationMode::rank_one ? "rank_one" : "bordered";
}

void emit(const json& doc) { std::cout << dump_deterministic(doc); }

// In-eigenbasis parameter vector: rotate through the basis when present
// (phases are irrelevant to the spectrum, so magnitudes suffice).
FieldVector diagonal_frame_vector(const ProblemFile& p) {
  if (!p.basis) return *p.v;
  return FieldVector::make_real(abs_map(*p.v, p.basis, p.tolerances).p());
}

// Orthant solution mapped back to ambient coordinates.
FieldVector ambient_vector(const ProblemFile& p, const std::vector<double>& coords) {
  if (!p.basis) return FieldVector::make_real(coords);
  return OrthantVector::in_basis(coords, *p.basis, p.tolerances.tol_orth).to_field_vector();
}

int cmd_forward(const ProblemFile& p) {
  if (!p.v) fail(ErrorCode::invalid_argument, "schema: forward requires v");
  const FieldVector v = diagonal_frame_vector(p);
  const SliceReport slice =
      check_slice_identities(p.lambda, v, p.c, p.mode, p.tolerances);
  const FaceProfile profile = classify_faces(p.lambda, slice.mu, p.mode, p.tolerances);

  json doc;
  doc["command"] = "forward";
  doc["mode"] = mode_name(p.mode);
  doc["lambda"] = vector_json(p.lambda.values());
  doc["mu"] = vector_json(slice.mu.values());
  json residuals;
  residuals["trace"] = slice.residual_trace;
  if (slice.residual_trace_squares)
    residuals["trace_squares"] = *slice.residual_trace_squares;
  doc["slice_residuals"] = residuals;
  doc["face_profile"] = face_profile_json(profile);
  emit(doc);
  return 0;
}

int cmd_invert(const ProblemFile& p, const std::string& method) {
  if (!p.mu) fail(ErrorCode::invalid_argument, "schema: invert requires mu");
  const bool run_closed = method == "closed" || method == "both";
  const bool run_continuation = method == "continuation" || method == "both";

  json doc;
  doc["command"] = "invert";
  doc["mode"] = mode_name(p.mode);
  doc["method"] = method;
  doc["lambda"] = vector_json(p.lambda.values());
  doc["mu"] = vector_json(p.mu->values());

  bool all_accepting = true;
  std::vector<double> closed_coords, continuation_coords;

  if (run_closed) {
    std::vector<double> coords;
    std::optional<double> c;
    if (p.mode == PerturbationMode::rank_one) {
      coords = invert_rank_one_closed(p.lambda, *p.mu, p.tolerances).p();
    } else {
      const BorderedProblem sol = invert_bordered_closed(p.lambda, *p.mu, p.tolerances);
      coords = sol.v.magnitudes();
      c = sol.c;
    }
    const SolveCertificate cert =
        certify(p.lambda, *p.mu, FieldVector::make_real(coords), c, p.mode,
                SolveMethod::closed_form, p.tolerances);
    all_accepting = all_accepting && cert.accepting;
    closed_coords = coords;
    json entry;
    entry["v"] = field_vector_json(ambient_vector(p, coords));
    if (c) entry["c"] = *c;
    entry["certificate"] = certificate_json(cert);
    doc["closed_form"] = entry;
  }

  if (run_continuation) {
    std::vector<double> coords;
    std::optional<double> c;
    SolveCertificate cert;
    if (p.mode == PerturbationMode::rank_one) {
      auto [sol, solved_cert] =
          invert_rank_one_continuation(p.lambda, *p.mu, p.continuation, p.tolerances);
      coords = sol.p();
      cert = solved_cert;
    } else {
      auto [sol, solved_cert] =
          invert_bordered_continuation(p.lambda, *p.mu, p.continuation, p.tolerances);
      coords = sol.v.magnitudes();
      c = sol.c;
      cert = solved_cert;
    }
    all_accepting = all_accepting && cert.accepting;
    continuation_coords = coords;
    json entry;
    entry["v"] = field_vector_json(ambient_vector(p, coords));
    if (c) entry["c"] = *c;
    entry["certificate"] = certificate_json(cert);
    doc["continuation"] = entry;
  }

  if (run_closed && run_continuation) {
    double disagreement = 0.0;
    for (std::size_t i = 0; i < closed_coords.size(); ++i)
      disagreement =
          std::max(disagreement, std::abs(closed_coords[i] - continuation_coords[i]));
    doc["max_disagreement"] = disagreement;
  }

  emit(doc);
  return all_accepting ? 0 : 4;
}

int cmd_preimages(const ProblemFile& p, std::int64_t limit, std::uint64_t seed) {
  if (!p.mu) fail(ErrorCode::invalid_argument, "schema: preimages requires mu");

  json doc;
  doc["command"] = "preimages";
  doc["mode"] = mode_name(p.mode);
  doc["field"] = p.field == Field::real ? "real" : "complex";
  doc["lambda"] = vector_json(p.lambda.values());
  doc["mu"] = vector_json(p.mu->values());

  const PreimageCount count = preimage_count(p.lambda, *p.mu, p.field, p.mode, p.tolerances);
  doc["k"] = static_cast<std::int64_t>(count.k);
  doc["r_squared"] = count.r_squared;

  if (p.field == Field::real) {
    const RealPreimages pre =
        enumerate_real_preimages(p.lambda, *p.mu, p.mode, p.tolerances);
    doc["count"] = static_cast<std::int64_t>(count.real_count);
    if (pre.c) doc["c"] = *pre.c;
    const std::size_t emit_count =
        limit < 0 ? pre.vectors.size()
                  : std::min<std::size_t>(pre.vectors.size(),
                                          static_cast<std::size_t>(limit));
    json list = json::array();
    for (std::size_t i = 0; i < emit_count; ++i) {
      json entry;
      json signs = json::array();
      for (int s : pre.patterns[i].signs) signs.push_back(static_cast<std::int64_t>(s));
      entry["signs"] = signs;
      entry["v"] = field_vector_json(ambient_vector(p, pre.vectors[i].real_entries()));
      list.push_back(entry);
    }
    doc["preimages"] = list;
    doc["truncated"] = emit_count < pre.vectors.size();
  } else {
    doc["torus_dimension"] = static_cast<std::int64_t>(count.torus_dimension);
    const std::size_t n = p.lambda.size();
    PhaseAssignment zero;
    zero.thetas.resize(n);
    const FieldVector rep = sample_complex_preimage(p.lambda, *p.mu, zero, p.mode,
                                                    p.tolerances);
    if (p.mode == PerturbationMode::bordered) doc["c"] = p.mu->sum() - p.lambda.sum();
    doc["representative"] = field_vector_json(rep);

    const std::int64_t samples = limit < 0 ? 0 : limit;
    if (samples > 0) {
      RandomSource rng(seed);
      const auto magnitudes = rep.magnitudes();
      json list = json::array();
      for (std::int64_t s = 0; s < samples; ++s) {
        PhaseAssignment phases;
        phases.thetas.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (magnitudes[i] != 0.0)
            phases.thetas.push_back(rng.uniform(0.0, 6.283185307179586));
          else
            phases.thetas.push_back(std::nullopt);
        }
        const FieldVector v =
            sample_complex_preimage(p.lambda, *p.mu, phases, p.mode, p.tolerances);
        json entry;
        json thetas = json::array();
        for (const auto& th : phases.thetas) {
          if (th)
            thetas.push_back(*th);
          else
            thetas.push_back(nullptr);
        }
        entry["thetas"] = thetas;
        entry["v"] = field_vector_json(v);
        // Dense complex route as the per-sample certificate.
        std::vector<double> sigma;
        if (p.mode == PerturbationMode::rank_one) {
          sigma = eig_hermitian(assemble_rank_one(p.lambda, v)).values.values();
        } else {
          const double c = p.mu->sum() - p.lambda.sum();
          sigma = eig_hermitian(assemble_arrowhead(p.lambda, v, c)).values.values();
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < sigma.size(); ++i)
          residual = std::max(residual, std::abs(sigma[i] - (*p.mu)[i]));
        entry["residual_spectrum"] = residual;
        list.push_back(entry);
      }
      doc["phase_samples"] = list;
    }
  }

  emit(doc);
  return 0;
}

int cmd_crease_demo(const ProblemFile& p, std::int64_t samples, const std::string& output) {
  if (p.lambda.size() != 2)
    fail(ErrorCode::invalid_argument, "schema: crease-demo requires exactly two lambda values");
  if (samples < 2) fail(ErrorCode::invalid_argument, "schema: samples must be >= 2");
  const double l1 = p.lambda[0];
  const double l2 = p.lambda[1];
  const double delta = l2 - l1;
  // Border magnitudes up to 2 sqrt(delta): the crease corner sits at
  // c = sqrt(delta) and the vertical branch runs on to (l2, l1 + 4 delta).
  const double cmax = 2.0 * std::sqrt(delta);

  std::string csv = "branch,x,y\n";
  const auto add_point = [&](const std::string& branch, double x, double y) {
    csv += branch;
    csv.push_back(',');
    csv += format_number(x);
    csv.push_back(',');
    csv += format_number(y);
    csv.push_back('\n');
  };
  const auto image_of = [&](double v1, double v2) {
    return forward_rank_one(p.lambda, FieldVector::make_real({v1, v2}), p.tolerances);
  };

  // E1 = {v_1 = 0}: image stays on the vertical ray {l1} x [l2, inf).
  for (std::int64_t i = 0; i < samples; ++i) {
    const double c = cmax * static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto mu = image_of(0.0, c);
    add_point("E1", mu[0], mu[1]);
  }

  // E2 = {v_2 = 0}: horizontal run until the crease corner at (l2, l2), then
  // up the vertical ray. The corner parameter c = sqrt(l2 - l1) is sampled
  // exactly.
  std::set<double> params;
  for (std::int64_t i = 0; i < samples; ++i)
    params.insert(cmax * static_cast<double>(i) / static_cast<double>(samples - 1));
  params.insert(std::sqrt(delta));
  for (double c : params) {
    const auto mu = image_of(c, 0.0);
    add_point("E2", mu[0], mu[1]);
  }

  // Interior grid images, one polyline per row.
  const std::int64_t grid = std::clamp<std::int64_t>(samples / 10, 2, 25);
  for (std::int64_t i = 0; i < grid; ++i) {
    const std::string branch = "interior_" + std::to_string(i);
    const double v1 = cmax * static_cast<double>(i + 1) / static_cast<double>(grid + 1);
    for (std::int64_t jj = 0; jj < grid; ++jj) {
      const double v2 = cmax * static_cast<double>(jj + 1) / static_cast<double>(grid + 1);
      const auto mu = image_of(v1, v2);
      add_point(branch, mu[0], mu[1]);
    }
  }

  if (output.empty() || output == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(output);
    if (!out) fail(ErrorCode::invalid_argument, "cannot open output file: " + output);
    out << csv;
  }
  return 0;
}

int cmd_verify(const ProblemFile& p, std::int64_t trials, std::uint64_t seed) {
  const OrderedSpectrum& lambda = p.lambda;
  const TolerancePolicy& tol = p.tolerances;
  require_simple(lambda, tol);
  const std::size_t n = lambda.size();
  const double scale = lambda.spread() + 1.0;
  RandomSource rng(seed);

  json hypotheses;
  bool all_passed = true;
  const auto record = [&](const char* name, std::int64_t checks, std::int64_t failures) {
    json entry;
    entry["checks"] = checks;
    entry["failures"] = failures;
    hypotheses[name] = entry;
    all_passed = all_passed && failures == 0;
  };

  // H1: properness through the trace identity sum(mu) - sum(lambda) = r^2.
  {
    const std::int64_t dirs = std::min<std::int64_t>(trials, 50);
    std::int64_t checks = 0, failures = 0;
    for (std::int64_t d = 0; d < dirs; ++d) {
      std::vector<double> u(n);
      double norm = 0.0;
      for (double& x : u) {
        x = std::abs(rng.normal()) + 0.1;
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (double r : {1.0, 10.0, 100.0}) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = u[i] * r / norm;
        const auto mu = forward_rank_one(lambda, FieldVector::make_real(v), tol);
        ++checks;
        if (std::abs(mu.sum() - lambda.sum() - r * r) > 1e-10 * (r * r + scale)) ++failures;
      }
    }
    record("H1_properness", checks, failures);
  }

  // H2: invertible Jacobians at random interior points, both maps.
  {
    const std::int64_t reps = std::min<std::int64_t>(trials, 200);
    std::int64_t checks = 0, failures = 0;
    for (std::int64_t rep = 0; rep < reps; ++rep) {
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform(0.3, 1.5) * std::sqrt(scale);
      const auto jf = jacobian_F(lambda, v, tol);
      ++checks;
      if (!(min_pivot(jf.entries) > 1e-8 * (max_abs(jf.entries) + 1e-300))) ++failures;

      const double c = rng.normal() * scale;
      const auto jg = jacobian_G({lambda, FieldVector::make_real(v), c}, tol);
      ++checks;
      if (!(min_pivot(jg.entries) > 1e-8 * (max_abs(jg.entries) + 1e-300))) ++failures;
    }
    record("H2_jacobian_invertible", checks, failures);
  }

  // H3: the all-ones direction witnesses an interior image point.
  {
    std::int64_t checks = 0, failures = 0;
    const double t = 0.1 * std::sqrt(scale);
    std::vector<double> v(n, t);
    const auto mu = forward_rank_one(lambda, FieldVector::make_real(v), tol);
    ++checks;
    if (!classify_faces(lambda, mu, PerturbationMode::rank_one, tol).interior()) ++failures;

    const double c = lambda.max() + 0.6 * scale;
    const auto mub = forward_bordered({lambda, FieldVector::make_real(v), c}, tol);
    ++checks;
    if (!classify_faces(lambda, mub, PerturbationMode::bordered, tol).interior()) ++failures;
    record("H3_interior_witness", checks, failures);
  }

  // H4: boundary law, checked through the dense eigensolver.
  {
    const std::int64_t reps = std::min<std::int64_t>(trials, 200);
    std::int64_t checks = 0, failures = 0;
    for (std::int64_t rep = 0; rep < reps; ++rep) {
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform(0.4, 1.3) * std::sqrt(scale);
      const std::size_t zero_at = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
      v[zero_at] = 0.0;
      const auto sigma = eig_hermitian(assemble_rank_one(lambda, v)).values;
      double dist = std::numeric_limits<double>::infinity();
      for (double s : sigma.values()) dist = std::min(dist, std::abs(s - lambda[zero_at]));
      const double span = std::max(sigma.max(), lambda.max()) -
                          std::min(sigma.min(), lambda.min());
      ++checks;
      if (dist > 1e-11 * (span + 1.0)) ++failures;
    }
    record("H4_boundary_law", checks, failures);
  }

  // H5: interior points never land on the image boundary.
  {
    const std::int64_t reps = std::min<std::int64_t>(trials, 200);
    std::int64_t checks = 0, failures = 0;
    for (std::int64_t rep = 0; rep < reps; ++rep) {
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform(0.4, 1.3) * std::sqrt(scale);
      const auto mu = forward_rank_one(lambda, FieldVector::make_real(v), tol);
      ++checks;
      if (!classify_faces(lambda, mu, PerturbationMode::rank_one, tol).interior()) ++failures;
    }
    record("H5_interior_to_interior", checks, failures);
  }

  json doc;
  doc["command"] = "verify";
  doc["lambda"] = vector_json(lambda.values());
  doc["trials"] = trials;
  doc["seed"] = seed;
  doc["hypotheses"] = hypotheses;
  doc["all_passed"] = all_passed;
  emit(doc);
  return all_passed ? 0 : 4;
}

}  // namespace
}  // namespace interlace::cli

int main(int argc, char** argv) {
  CLI::App app{"Forward and inverse spectral maps for rank-one updates and borderings"};
  app.require_subcommand(1);

  std::string file;
  std::string method = "closed";
  std::string output;
  std::int64_t trials = 1000;
  std::int64_t limit = -1;
  std::int64_t samples = 100;
  std::uint64_t seed = 0;
  double tol_res_override = -1.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "problem file (JSON)")->required();
    cmd->add_option("--tol", tol_res_override,
                    "override the certificate residual tolerance tol_res");
  };

  CLI::App* fwd = app.add_subcommand("forward", "apply the forward spectral map");
  add_common(fwd);

  CLI::App* inv = app.add_subcommand("invert", "solve the inverse interlacing problem");
  add_common(inv);
  inv->add_option("--method", method, "closed | continuation | both")
      ->check(CLI::IsMember({"closed", "continuation", "both"}));

  CLI::App* pre = app.add_subcommand("preimages", "enumerate or sample the preimage set");
  add_common(pre);
  pre->add_option("--limit", limit,
                  "max preimages to emit (real) / phase samples to draw (complex)");
  pre->add_option("--seed", seed, "random seed for phase samples");

  CLI::App* crease = app.add_subcommand("crease-demo", "export n=2 crease geometry as CSV");
  add_common(crease);
  crease->add_option("--samples", samples, "points per boundary branch");
  crease->add_option("--output,-o", output, "CSV destination (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the randomized property suite");
  add_common(verify);
  verify->add_option("--trials", trials, "randomized trials per hypothesis");
  verify->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  using namespace interlace;
  using namespace interlace::cli;
  try {
    ProblemFile problem = load_problem(file);
    if (tol_res_override > 0.0) problem.tolerances.tol_res = tol_res_override;
    if (fwd->parsed()) return cmd_forward(problem);
    if (inv->parsed()) return cmd_invert(problem, method);
    if (pre->parsed()) return cmd_preimages(problem, limit, seed);
    if (crease->parsed()) return cmd_crease_demo(problem, samples, output);
    if (verify->parsed()) return cmd_verify(problem, trials, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
