#include "spintriad/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spintriad {

namespace {

std::vector<int> shape_from_json(const Json& j) {
  std::vector<int> shape;
  for (const auto& v : j.at("shape")) shape.push_back(v.get<int>());
  return shape;
}

}  // namespace

Json operator_to_json(const Operator& op) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < op.dim(); ++i) {
    Json rrow = Json::array(), irow = Json::array();
    for (int j = 0; j < op.dim(); ++j) {
      rrow.push_back(op.entries(i, j).real());
      irow.push_back(op.entries(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return Json{{"shape", op.shape}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Operator operator_from_json(const Json& j) {
  const std::vector<int> shape = shape_from_json(j);
  const int d = shape_dim(shape);
  const Json& re = j.at("re");
  Matrix m(d, d);
  const bool has_im = j.contains("im") && !j.at("im").is_null();
  if (static_cast<int>(re.size()) != d) throw std::invalid_argument("operator JSON: bad row count");
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(re.at(r).size()) != d)
      throw std::invalid_argument("operator JSON: bad column count");
    for (int c = 0; c < d; ++c) {
      const double rv = re.at(r).at(c).get<double>();
      const double iv = has_im ? j.at("im").at(r).at(c).get<double>() : 0.0;
      m(r, c) = Complex(rv, iv);
    }
  }
  return Operator(std::move(m), shape);
}

Json ket_to_json(const Ket& k) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < k.dim(); ++i) {
    re.push_back(k.amplitudes(i).real());
    im.push_back(k.amplitudes(i).imag());
  }
  return Json{{"shape", k.shape}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Ket ket_from_json(const Json& j) {
  const std::vector<int> shape = shape_from_json(j);
  const int d = shape_dim(shape);
  const Json& re = j.at("re");
  if (static_cast<int>(re.size()) != d) throw std::invalid_argument("ket JSON: bad length");
  const bool has_im = j.contains("im") && !j.at("im").is_null();
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    const double rv = re.at(i).get<double>();
    const double iv = has_im ? j.at("im").at(i).get<double>() : 0.0;
    v(i) = Complex(rv, iv);
  }
  return Ket(std::move(v), shape);
}

Json povm_to_json(const Povm& p) {
  Json elems = Json::array();
  for (const Operator& e : p.elements) elems.push_back(operator_to_json(e));
  Json out{{"elements", std::move(elems)}, {"space", operator_to_json(p.space)}};
  if (!p.labels.empty()) out["labels"] = p.labels;
  return out;
}

Povm povm_from_json(const Json& j) {
  std::vector<Operator> elems;
  for (const auto& e : j.at("elements")) elems.push_back(operator_from_json(e));
  if (elems.empty()) throw std::invalid_argument("POVM JSON: no elements");
  Operator space = (j.contains("space") && !j.at("space").is_null())
                       ? operator_from_json(j.at("space"))
                       : Operator(Matrix::Identity(elems.front().dim(), elems.front().dim()),
                                  elems.front().shape);
  std::vector<std::string> labels;
  if (j.contains("labels") && !j.at("labels").is_null())
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
  return Povm::create(std::move(elems), std::move(space), std::move(labels));
}

Json fidelity_report_to_json(const FidelityReport& r) {
  Json out;
  out["strategy"] = r.strategy;
  out["analytic"] = r.analytic ? Json(*r.analytic) : Json(nullptr);
  out["computed"] = r.computed;
  out["mc_mean"] = r.mc_mean ? Json(*r.mc_mean) : Json(nullptr);
  out["mc_stderr"] = r.mc_std_error ? Json(*r.mc_std_error) : Json(nullptr);
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  return out;
}

Json bound_report_to_json(const BoundReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.saturation_points) pts.push_back(Json::array({p[0], p[1]}));
  return Json{{"lemma", r.lemma},       {"max_violation", r.max_violation},
              {"saturation_points", pts}, {"grid", r.grid},
              {"randoms", r.randoms},   {"seed", r.seed}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace spintriad
