#include "optuple/json_io.hpp"

#include <fstream>

#include "optuple/decomp.hpp"

namespace optuple {

Json scalar_to_json(const ExtScalar& s) {
  Json j;
  if (s.is_aleph()) {
    j["type"] = "aleph";
    j["index"] = s.aleph_index();
  } else {
    j["type"] = "rational";
    j["num"] = s.num();
    j["den"] = s.den();
  }
  return j;
}

ExtScalar scalar_from_json(const Json& j) {
  try {
    std::string type = j.at("type").get<std::string>();
    if (type == "aleph") return ExtScalar::aleph(j.at("index").get<int>());
    if (type == "rational")
      return ExtScalar::rational(j.at("num").get<std::int64_t>(),
                                 j.at("den").get<std::int64_t>());
    throw InputError("unknown scalar type: " + type);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed scalar JSON: ") + e.what());
  }
}

Json class_to_json(const TupleClass& c) {
  Json labels = Json::array();
  for (const auto& [id, entry] : c.entries()) {
    const auto& [label, value] = entry;
    Json one;
    one["id"] = label.id;
    one["kind"] = kind_name(label.kind);
    if (label.dim == PrimeLabel::kOmega)
      one["dim"] = "omega";
    else
      one["dim"] = label.dim;
    one["mult"] = scalar_to_json(value);
    labels.push_back(std::move(one));
  }
  Json j;
  j["labels"] = std::move(labels);
  return j;
}

TupleClass class_from_json(const Json& j) {
  TupleClass out;
  try {
    for (const auto& one : j.at("labels")) {
      PrimeLabel label;
      label.id = one.at("id").get<std::string>();
      label.kind = kind_from_name(one.at("kind").get<std::string>());
      const auto& dim = one.at("dim");
      if (dim.is_string()) {
        if (dim.get<std::string>() != "omega")
          throw InputError("label dim must be an integer or \"omega\"");
        label.dim = PrimeLabel::kOmega;
      } else {
        label.dim = dim.get<int>();
        if (label.dim < 1) throw InputError("label dim must be >= 1 or \"omega\"");
      }
      if (!label.is_atom() && label.dim != PrimeLabel::kOmega)
        throw InputError("non-atom labels have dim \"omega\"");
      ExtScalar prev = out.at(label);
      out.set(label, prev + scalar_from_json(one.at("mult")));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed class JSON: ") + e.what());
  }
  return out;
}

Json tuple_to_json(const MatrixTuple& a) {
  Json mats = Json::array();
  for (const auto& m : a.entries()) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < m.cols(); ++j)
        row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  Json j;
  j["n"] = a.length();
  j["dim"] = a.dim();
  j["matrices"] = std::move(mats);
  return j;
}

MatrixTuple tuple_from_json(const Json& j) {
  try {
    int n = j.at("n").get<int>();
    int d = j.at("dim").get<int>();
    if (n < 1) throw InputError("tuple length must be >= 1");
    if (d < 0) throw InputError("tuple dimension must be >= 0");
    const auto& mats = j.at("matrices");
    if (static_cast<int>(mats.size()) != n)
      throw InputError("matrix count does not match n");
    std::vector<Matrix> entries;
    entries.reserve(n);
    for (const auto& rows : mats) {
      if (static_cast<int>(rows.size()) != d)
        throw InputError("matrix row count does not match dim");
      Matrix m(d, d);
      for (int i = 0; i < d; ++i) {
        const auto& row = rows[i];
        if (static_cast<int>(row.size()) != d)
          throw InputError("matrix column count does not match dim");
        for (int k = 0; k < d; ++k) {
          const auto& e = row[k];
          if (!e.is_array() || e.size() != 2)
            throw InputError("matrix entry must be [re, im]");
          m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
        }
      }
      entries.push_back(std::move(m));
    }
    if (d == 0) return MatrixTuple(n, 0);
    return MatrixTuple(std::move(entries));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed tuple JSON: ") + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = std::move(rows);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  try {
    int r = j.at("rows").get<int>();
    int c = j.at("cols").get<int>();
    if (r < 0 || c < 0) throw InputError("matrix shape must be non-negative");
    const auto& rows = j.at("entries");
    if (static_cast<int>(rows.size()) != r)
      throw InputError("matrix row count does not match rows");
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      const auto& row = rows[i];
      if (static_cast<int>(row.size()) != c)
        throw InputError("matrix column count does not match cols");
      for (int k = 0; k < c; ++k)
        m(i, k) = Complex(row[k].at(0).get<double>(), row[k].at(1).get<double>());
    }
    return m;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json report_to_json(const DecompositionReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    Json one;
    one["atom"] = tuple_to_json(b.atom);
    one["multiplicity"] = b.multiplicity;
    one["isometry"] = matrix_to_json(b.isometry);
    blocks.push_back(std::move(one));
  }
  Json j;
  j["blocks"] = std::move(blocks);
  j["residual"] = r.residual;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace optuple
