#include "entanglia_cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace entanglia::cli {

namespace {

RMat real_array_2d(const json& a, const char* what) {
  if (!a.is_array() || a.empty()) throw InputError(std::string(what) + ": expected a non-empty 2-D array");
  const auto rows = static_cast<Eigen::Index>(a.size());
  const auto cols = static_cast<Eigen::Index>(a[0].is_array() ? a[0].size() : 0);
  if (cols == 0) throw InputError(std::string(what) + ": rows must be non-empty arrays");
  RMat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = a[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(std::string(what) + ": ragged array");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& x = row[static_cast<std::size_t>(j)];
      if (!x.is_number()) throw InputError(std::string(what) + ": non-numeric entry");
      out(i, j) = x.get<double>();
    }
  }
  return out;
}

RVec real_array_1d(const json& a, const char* what) {
  if (!a.is_array() || a.empty()) throw InputError(std::string(what) + ": expected a non-empty array");
  RVec out(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw InputError(std::string(what) + ": non-numeric entry");
    out(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  }
  return out;
}

bool is_1d(const json& a) { return a.is_array() && !a.empty() && !a[0].is_array(); }

std::optional<int> positive_int(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(std::string("field '") + key + "' must be a positive integer");
  }
  return v.get<int>();
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const json& j, int indent, int level, std::string& out) {
  const auto newline = [&](int lvl) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(it.value(), indent, level + 1, out);
      }
      newline(level);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
      out += '[';
      bool first = true;
      for (const json& x : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(level + 1);
        dump_into(x, indent, level + 1, out);
      }
      if (!flat) newline(level);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

MatrixFile parse_matrix_file(const json& j) {
  if (!j.is_object()) throw InputError("matrix file: top level must be an object");
  if (!j.contains("re")) throw InputError("matrix file: missing 're'");
  MatrixFile f;
  f.m = positive_int(j, "m");
  f.n = positive_int(j, "n");
  if (j.contains("dims")) {
    const json& d = j.at("dims");
    if (!d.is_array() || d.empty()) throw InputError("matrix file: 'dims' must be a non-empty array");
    for (const json& x : d) {
      if (!x.is_number_integer() || x.get<long long>() < 1) throw InputError("matrix file: bad entry in 'dims'");
      f.dims.push_back(x.get<int>());
    }
  }
  const json& re = j.at("re");
  f.is_vector = is_1d(re);
  if (f.is_vector) {
    const RVec r = real_array_1d(re, "re");
    RVec i = RVec::Zero(r.size());
    if (j.contains("im")) {
      if (!is_1d(j.at("im"))) throw InputError("matrix file: 're' and 'im' must have the same shape");
      i = real_array_1d(j.at("im"), "im");
      if (i.size() != r.size()) throw InputError("matrix file: 're' and 'im' must have the same shape");
    }
    f.mat = CMat(r.size(), 1);
    f.mat.col(0) = r.cast<cplx>() + cplx(0, 1) * i.cast<cplx>();
  } else {
    const RMat r = real_array_2d(re, "re");
    RMat i = RMat::Zero(r.rows(), r.cols());
    if (j.contains("im")) {
      i = real_array_2d(j.at("im"), "im");
      if (i.rows() != r.rows() || i.cols() != r.cols()) {
        throw InputError("matrix file: 're' and 'im' must have the same shape");
      }
    }
    f.mat = r.cast<cplx>() + cplx(0, 1) * i.cast<cplx>();
  }
  if (f.m.has_value() != f.n.has_value()) throw InputError("matrix file: 'm' and 'n' must be given together");
  if (f.m) {
    const long long mn = static_cast<long long>(*f.m) * *f.n;
    const bool ok = f.is_vector ? f.mat.rows() == mn : (f.mat.rows() == mn && f.mat.cols() == mn);
    if (!ok) throw InputError("matrix file: shape does not match m*n");
  }
  if (!f.dims.empty()) {
    long long prod = 1;
    for (int d : f.dims) prod *= d;
    if (f.mat.rows() != prod) throw InputError("matrix file: shape does not match the product of 'dims'");
  }
  return f;
}

MatrixFile parse_matrix_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_matrix_file(j);
}

json matrix_json(const CMat& A) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      rr.push_back(A(i, k).real());
      ii.push_back(A(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json vector_json(const CVec& v) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json matrix_file_json(const CMat& A, std::optional<int> m, std::optional<int> n) {
  json j = json::object();
  if (m) j["m"] = *m;
  if (n) j["n"] = *n;
  json body = matrix_json(A);
  j["re"] = std::move(body["re"]);
  j["im"] = std::move(body["im"]);
  return j;
}

CMat matrix_from_json(const json& j) { return parse_matrix_file(j).mat; }

CVec vector_from_json(const json& j) {
  const MatrixFile f = parse_matrix_file(j);
  if (f.mat.cols() != 1) throw InputError("expected a vector");
  return f.mat.col(0);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_string(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

}  // namespace entanglia::cli
