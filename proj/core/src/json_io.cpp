#include "freespec/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace freespec {

namespace {

void check_schema(const Json& j, const std::string& where) {
  if (!j.is_object()) {
    throw std::invalid_argument(where + ": expected a JSON object");
  }
  if (!j.contains("schema") || !j["schema"].is_string() ||
      j["schema"].get<std::string>() != kSchemaTag) {
    throw std::invalid_argument(where + "/schema: expected \"" +
                                std::string(kSchemaTag) + "\"");
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument(where + ": expected [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

FreeSeries series_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) {
    throw std::invalid_argument(where + ": expected a list of terms");
  }
  FreeSeries out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    const Json& term = j[i];
    if (!term.is_object() || !term.contains("word") || !term.contains("coeff")) {
      throw std::invalid_argument(at + ": expected {\"word\", \"coeff\"}");
    }
    std::vector<int> word;
    for (const Json& letter : term["word"]) {
      if (!letter.is_number_integer()) {
        throw std::invalid_argument(at + "/word: expected integers");
      }
      word.push_back(letter.get<int>());
    }
    out.max_degree = std::max(out.max_degree, static_cast<int>(word.size()));
    out.terms[word] = complex_from_json(term["coeff"], at + "/coeff");
  }
  return out;
}

Json series_to_json(const FreeSeries& s) {
  Json out = Json::array();
  for (const auto& [word, coeff] : s.terms) {
    out.push_back({{"word", word}, {"coeff", complex_to_json(coeff)}});
  }
  return out;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(where + ": expected a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    throw std::invalid_argument(where + "/0: expected a nonempty row");
  }
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string at = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) {
      throw std::invalid_argument(at + ": ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], at + "/" + std::to_string(c));
    }
  }
  return m;
}

Json pencil_to_json(const Pencil& p) {
  Json out;
  out["schema"] = kSchemaTag;
  out["dims"] = p.dims;
  Json blocks = Json::array();
  for (const Matrix& c : p.blocks) blocks.push_back(matrix_to_json(c));
  out["C"] = std::move(blocks);
  return out;
}

Pencil pencil_from_json(const Json& j, bool rescale) {
  check_schema(j, "pencil");
  if (!j.contains("dims") || !j["dims"].is_array()) {
    throw std::invalid_argument("pencil/dims: expected an array");
  }
  if (!j.contains("C") || !j["C"].is_array()) {
    throw std::invalid_argument("pencil/C: expected an array of matrices");
  }
  std::vector<Eigen::Index> dims;
  for (const Json& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw std::invalid_argument("pencil/dims: expected positive integers");
    }
    dims.push_back(d.get<Eigen::Index>());
  }
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < j["C"].size(); ++i) {
    blocks.push_back(matrix_from_json(j["C"][i], "pencil/C/" + std::to_string(i)));
  }
  return build_pencil(dims, blocks, rescale);
}

Json tuple_to_json(const MatrixTuple& t) {
  Json out;
  out["schema"] = kSchemaTag;
  out["n"] = t.level();
  Json coords = Json::array();
  for (const Matrix& m : t.coords) coords.push_back(matrix_to_json(m));
  out["X"] = std::move(coords);
  return out;
}

MatrixTuple tuple_from_json(const Json& j) {
  check_schema(j, "tuple");
  if (!j.contains("X") || !j["X"].is_array() || j["X"].empty()) {
    throw std::invalid_argument("tuple/X: expected a nonempty array of matrices");
  }
  MatrixTuple t;
  for (std::size_t i = 0; i < j["X"].size(); ++i) {
    t.coords.push_back(matrix_from_json(j["X"][i], "tuple/X/" + std::to_string(i)));
  }
  if (j.contains("n")) {
    const Eigen::Index n = j["n"].get<Eigen::Index>();
    if (n != t.level()) {
      throw std::invalid_argument("tuple/n: does not match the matrix sizes");
    }
  }
  for (const Matrix& m : t.coords) {
    if (m.rows() != t.level() || m.cols() != t.level()) {
      throw std::invalid_argument("tuple/X: coordinates must be square, same size");
    }
  }
  return t;
}

Json candidate_to_json(const CandidateAutomorphism& c) {
  Json out;
  out["schema"] = kSchemaTag;
  out["perm"] = c.perm;
  out["theta"] = c.theta;
  Json centers = Json::array();
  for (Complex bj : c.b) centers.push_back(complex_to_json(bj));
  out["b"] = std::move(centers);
  if (c.has_higher()) {
    Json higher = Json::array();
    for (const FreeSeries& s : c.higher) higher.push_back(series_to_json(s));
    out["higher"] = std::move(higher);
  }
  return out;
}

CandidateAutomorphism candidate_from_json(const Json& j) {
  check_schema(j, "candidate");
  for (const char* key : {"perm", "theta", "b"}) {
    if (!j.contains(key) || !j[key].is_array()) {
      throw std::invalid_argument(std::string("candidate/") + key +
                                  ": expected an array");
    }
  }
  CandidateAutomorphism c;
  for (const Json& v : j["perm"]) c.perm.push_back(v.get<int>());
  for (const Json& v : j["theta"]) c.theta.push_back(v.get<double>());
  for (std::size_t i = 0; i < j["b"].size(); ++i) {
    c.b.push_back(complex_from_json(j["b"][i], "candidate/b/" + std::to_string(i)));
  }
  if (j.contains("higher")) {
    for (std::size_t i = 0; i < j["higher"].size(); ++i) {
      c.higher.push_back(
          series_from_json(j["higher"][i], "candidate/higher/" + std::to_string(i)));
    }
  }
  validate(c);
  return c;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json out;
  out["schema"] = kSchemaTag;
  out["pass"] = r.pass;
  out["samples_run"] = r.samples_run;
  out["failures"] = r.failures;
  out["eval_errors"] = r.eval_errors;
  out["worst_margin"] = r.worst_margin;
  if (r.witness) out["witness"] = tuple_to_json(*r.witness);
  if (r.witness_input) out["witness_input"] = tuple_to_json(*r.witness_input);
  Json samples = Json::array();
  for (const SampleResult& s : r.samples) {
    Json entry;
    entry["kind"] = s.kind;
    entry["input_verdict"] = to_string(s.input_verdict);
    entry["input_margin"] = s.input_margin;
    if (s.output_verdict) {
      entry["output_verdict"] = to_string(*s.output_verdict);
      entry["output_margin"] = s.output_margin;
    }
    entry["ok"] = s.ok;
    if (!s.error.empty()) entry["error"] = s.error;
    samples.push_back(std::move(entry));
  }
  out["samples"] = std::move(samples);
  return out;
}

Json structure_report_to_json(const StructureReport& r) {
  Json out;
  out["schema"] = kSchemaTag;
  out["verdict"] = to_string(r.verdict);
  out["trials"] = r.trials;
  out["worst_margin"] = r.worst_margin;
  if (!r.note.empty()) out["note"] = r.note;
  if (r.witness) out["witness"] = tuple_to_json(*r.witness);
  return out;
}

Json classification_to_json(const IndexClassification& c) {
  Json out;
  out["schema"] = kSchemaTag;
  out["g"] = c.g;
  out["zplus"] = c.zplus;
  out["zminus"] = c.zminus;
  out["plain"] = c.plain();
  return out;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace freespec
