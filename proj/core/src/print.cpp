#include "metalie/print.hpp"

#include <sstream>

namespace metalie {

std::string degree_text(int d) {
  if (d == kLdegOfZero) return "+inf";
  if (d == kDegOfZero) return "-inf";
  return std::to_string(d);
}

std::string to_text(const DegreePair& d) {
  return "(" + degree_text(d.ldeg) + ", " + degree_text(d.deg) + ")";
}

namespace {

std::string bracket_text(int head, const std::vector<int>& tail) {
  std::string s = "[x" + std::to_string(head) + ",x" +
                  std::to_string(tail.front()) + "]";
  for (size_t k = 1; k < tail.size(); ++k)
    s = "[" + s + ",x" + std::to_string(tail[k]) + "]";
  return s;
}

// Appends "coeff*body" to the stream with polynomial-style sign handling.
void append_term(std::ostringstream& out, bool& first, const Scalar& coeff,
                 const std::string& body) {
  std::string cs = coeff.str();
  bool neg = !cs.empty() && cs[0] == '-';
  if (neg) cs = cs.substr(1);
  if (first) {
    if (neg) out << "-";
    first = false;
  } else {
    out << (neg ? " - " : " + ");
  }
  if (body.empty()) {
    out << cs;
  } else if (cs == "1") {
    out << body;
  } else {
    out << cs << "*" << body;
  }
}

}  // namespace

std::string to_text(const BasisCombination& b) {
  std::ostringstream out;
  bool first = true;
  for (int i = 1; i <= b.ctx.n; ++i) {
    const Scalar& c = b.linear[static_cast<size_t>(i - 1)];
    if (!c.is_zero()) append_term(out, first, c, "x" + std::to_string(i));
  }
  for (const BasisTerm& t : b.terms)
    append_term(out, first, t.coeff, bracket_text(t.head, t.tail));
  if (first) return "0";
  return out.str();
}

std::string to_text(const MagnusElement& e) { return to_text(to_basis(e)); }

std::string to_text(const Endomorphism& phi) {
  std::ostringstream out;
  for (int i = 1; i <= phi.context().n; ++i) {
    if (i > 1) out << "\n";
    out << "x" << i << " -> " << to_text(phi.image(i));
  }
  return out.str();
}

std::string to_text(const JacobianColumn& c) {
  std::ostringstream out;
  out << "(";
  for (int i = 1; i <= c.ctx.n; ++i) {
    if (i > 1) out << ", ";
    out << c.entries[static_cast<size_t>(i - 1)].str();
  }
  out << ")";
  return out.str();
}

std::string to_text(const PolyMatrix& m) {
  std::ostringstream out;
  for (int i = 1; i <= m.size(); ++i) {
    if (i > 1) out << "\n";
    out << "[";
    for (int j = 1; j <= m.size(); ++j) {
      if (j > 1) out << ", ";
      out << m.at(i, j).str();
    }
    out << "]";
  }
  return out.str();
}

}  // namespace metalie
