#include "qcopula/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qcopula/error.hpp"

namespace qcopula {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

double number_at(const json& j, const std::string& what) {
  if (!j.is_number()) parse_error(what + " must be a number");
  return j.get<double>();
}

void check_rows(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) parse_error(what + " must be a non-empty array of rows");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != j.front().size())
      parse_error(what + " rows must be arrays of equal length");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void write(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      if (is_scalar_array(j)) {
        os << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          write(os, j[k], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << pad;
        write(os, j[k], indent, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

json complex_matrix_to_json(const CMatrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(json::array({a(i, k).real(), a(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix complex_matrix_from_json(const json& j, const std::string& what) {
  check_rows(j, what);
  CMatrix a(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.front().size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const json& z = j[i][k];
      if (!z.is_array() || z.size() != 2) parse_error(what + " entries must be [re, im] pairs");
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(number_at(z[0], what + " real part"), number_at(z[1], what + " imaginary part"));
    }
  }
  return a;
}

json real_matrix_to_json(const RMatrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix real_matrix_from_json(const json& j, const std::string& what) {
  check_rows(j, what);
  RMatrix a(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.front().size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::size_t k = 0; k < j[i].size(); ++k)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = number_at(j[i][k], what + " entry");
  return a;
}

json real_vector_to_json(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json density_to_json(const DensityMatrix& rho) {
  return json{{"dims", json::array({rho.dim_a(), rho.dim_b()})}, {"matrix", complex_matrix_to_json(rho.matrix())}};
}

DensityMatrix density_from_json(const json& j, double tol) {
  if (!j.is_object()) parse_error("density matrix document must be a JSON object");
  if (!j.contains("dims") || !j.contains("matrix")) parse_error("density matrix document needs \"dims\" and \"matrix\"");
  const json& dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer())
    throw Error(ErrorCode::InvalidState, "dims invariant violated: \"dims\" must be [n, m] with integer entries");
  const int n = dims[0].get<int>();
  const int m = dims[1].get<int>();
  const CMatrix mat = complex_matrix_from_json(j.at("matrix"), "matrix");

  // Validates dims, Hermiticity, trace and PSD-ness at the file tolerance.
  const DensityMatrix checked(mat, n, m, tol);
  const CMatrix& h = checked.matrix();
  return DensityMatrix(h / h.trace().real(), n, m, tol);
}

json config_to_json(const SolverConfig& cfg) {
  return json{{"tol", cfg.tol},
              {"marginal_tol", cfg.marginal_tol},
              {"max_iter", cfg.max_iter},
              {"rank_tol", cfg.rank_tol},
              {"regularize", cfg.regularize},
              {"reg_eps", cfg.reg_eps}};
}

SolverConfig config_from_json(const json& j, SolverConfig base) {
  if (!j.is_object()) parse_error("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "tol") {
      base.tol = number_at(v, key);
    } else if (key == "marginal_tol") {
      base.marginal_tol = number_at(v, key);
    } else if (key == "max_iter") {
      if (!v.is_number_integer()) parse_error("max_iter must be an integer");
      base.max_iter = v.get<int>();
    } else if (key == "rank_tol") {
      base.rank_tol = number_at(v, key);
    } else if (key == "regularize") {
      if (!v.is_boolean()) parse_error("regularize must be a boolean");
      base.regularize = v.get<bool>();
    } else if (key == "reg_eps") {
      base.reg_eps = number_at(v, key);
    } else {
      parse_error("unknown config key \"" + key + "\"");
    }
  }
  return base;
}

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  os << "\n";
  return os.str();
}

}  // namespace qcopula
