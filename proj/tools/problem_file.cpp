#include "problem_file.hpp"

#include <fstream>

namespace interlace::cli {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& what) {
  fail(ErrorCode::invalid_argument, "schema: " + what);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where + " must be a number");
  return j.get<double>();
}

std::vector<double> as_real_vector(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(as_number(item, where + " entry"));
  return out;
}

std::complex<double> as_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  schema_error(where + " must be a number or an [re, im] pair");
}

FieldVector as_field_vector(const json& j, Field field, const std::string& where) {
  if (!j.is_array()) schema_error(where + " must be an array");
  if (field == Field::real) {
    return FieldVector::make_real(as_real_vector(j, where));
  }
  std::vector<std::complex<double>> entries;
  entries.reserve(j.size());
  for (const auto& item : j) entries.push_back(as_complex(item, where + " entry"));
  return FieldVector::make_complex(std::move(entries));
}

ComplexMatrix as_basis(const json& j, Field field, std::size_t n) {
  if (!j.is_array() || j.size() != n) schema_error("basis must be an n x n array of rows");
  ComplexMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != n)
      schema_error("basis must be an n x n array of rows");
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> z = as_complex(row[k], "basis entry");
      if (field == Field::real && z.imag() != 0.0)
        schema_error("complex basis requires field = complex");
      q(i, k) = z;
    }
  }
  return q;
}

}  // namespace

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) schema_error("problem document must be a JSON object");
  static const char* known[] = {"mode", "field", "lambda", "mu", "v", "c", "basis", "options"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) schema_error("unknown key '" + it.key() + "'");
  }

  ProblemFile p;

  if (!doc.contains("mode") || !doc["mode"].is_string())
    schema_error("mode must be \"rank_one\" or \"bordered\"");
  const std::string mode = doc["mode"].get<std::string>();
  if (mode == "rank_one")
    p.mode = PerturbationMode::rank_one;
  else if (mode == "bordered")
    p.mode = PerturbationMode::bordered;
  else
    schema_error("mode must be \"rank_one\" or \"bordered\"");

  if (doc.contains("field")) {
    if (!doc["field"].is_string()) schema_error("field must be \"real\" or \"complex\"");
    const std::string field = doc["field"].get<std::string>();
    if (field == "real")
      p.field = Field::real;
    else if (field == "complex")
      p.field = Field::complex;
    else
      schema_error("field must be \"real\" or \"complex\"");
  }

  if (!doc.contains("lambda")) schema_error("lambda is required");
  p.lambda = OrderedSpectrum::strict(as_real_vector(doc["lambda"], "lambda"));
  const std::size_t n = p.lambda.size();

  if (doc.contains("mu")) {
    std::vector<double> mu = as_real_vector(doc["mu"], "mu");
    const std::size_t expected = p.mode == PerturbationMode::rank_one ? n : n + 1;
    if (mu.size() != expected)
      fail(ErrorCode::length_mismatch,
           "schema: mu must have " + std::to_string(expected) + " entries");
    p.mu = OrderedSpectrum::weak(std::move(mu));
  }
  if (doc.contains("v")) {
    p.v = as_field_vector(doc["v"], p.field, "v");
    if (p.v->size() != n)
      fail(ErrorCode::length_mismatch, "schema: v must have n entries");
  }
  if (doc.contains("c")) p.c = as_number(doc["c"], "c");

  if (p.mu.has_value() == p.v.has_value())
    schema_error("exactly one of mu (inverse) or v (forward) must be present");
  if (p.v && p.mode == PerturbationMode::bordered && !p.c)
    schema_error("bordered forward problems require c");

  if (doc.contains("basis")) p.basis = as_basis(doc["basis"], p.field, n);

  p.tolerances = TolerancePolicy::for_spectrum(p.lambda);
  if (doc.contains("options")) {
    const auto& opts = doc["options"];
    if (!opts.is_object()) schema_error("options must be an object");
    for (auto it = opts.begin(); it != opts.end(); ++it) {
      const std::string& key = it.key();
      if (key == "tol_gap")
        p.tolerances.tol_gap = as_number(it.value(), key);
      else if (key == "tol_face")
        p.tolerances.tol_face = as_number(it.value(), key);
      else if (key == "tol_res")
        p.tolerances.tol_res = as_number(it.value(), key);
      else if (key == "tol_orth")
        p.tolerances.tol_orth = as_number(it.value(), key);
      else if (key == "max_steps")
        p.continuation.max_steps = static_cast<int>(as_number(it.value(), key));
      else if (key == "newton_tol")
        p.continuation.newton_tol = as_number(it.value(), key);
      else if (key == "newton_max_iter")
        p.continuation.newton_max_iter = static_cast<int>(as_number(it.value(), key));
      else if (key == "initial_step")
        p.continuation.initial_step = as_number(it.value(), key);
      else if (key == "min_step")
        p.continuation.min_step = as_number(it.value(), key);
      else
        schema_error("unknown option '" + key + "'");
    }
    p.tolerances.validate();
    p.continuation.validate();
  }
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema_error("cannot open problem file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    schema_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

}  // namespace interlace::cli
