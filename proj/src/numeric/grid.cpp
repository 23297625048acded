#include "genquant/numeric/grid.hpp"

#include <cmath>
#include <sstream>

#include "genquant/error.hpp"

namespace gq::numeric {

namespace {

const char* edge_name(Edge e) {
  switch (e) {
    case Edge::Dirichlet:
      return "dirichlet";
    case Edge::ZeroFlux:
      return "zero-flux";
    case Edge::Periodic:
      return "periodic";
  }
  return "?";
}

}  // namespace

Axis make_axis(const AxisSpec& spec) {
  if (spec.nodes < 1) throw GridError("axis " + spec.coordinate + " needs at least one node");
  if (!(spec.lo < spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
    throw GridError("axis " + spec.coordinate + " needs a finite interval lo < hi");
  }
  if ((spec.lower == Edge::Periodic) != (spec.upper == Edge::Periodic)) {
    throw GridError("axis " + spec.coordinate + " must be periodic on both ends or neither");
  }
  const bool log = spec.spacing == Spacing::Logarithmic;
  if (log && spec.lo <= 0) throw GridError("logarithmic axis " + spec.coordinate + " needs lo > 0");
  if (log && spec.lower == Edge::Periodic) throw GridError("logarithmic axis cannot be periodic");

  const int n = spec.nodes;
  const double a = log ? std::log(spec.lo) : spec.lo;
  const double b = log ? std::log(spec.hi) : spec.hi;
  std::vector<double> s_nodes(static_cast<std::size_t>(n));
  std::vector<double> s_faces(static_cast<std::size_t>(n) + 1);
  if (spec.lower == Edge::Periodic) {
    const double d = (b - a) / n;
    for (int k = 0; k < n; ++k) s_nodes[static_cast<std::size_t>(k)] = a + k * d;
    for (int k = 0; k <= n; ++k) s_faces[static_cast<std::size_t>(k)] = a + (k - 0.5) * d;
  } else if (spec.lower == Edge::ZeroFlux || spec.upper == Edge::ZeroFlux) {
    const double d = (b - a) / n;
    for (int k = 0; k < n; ++k) s_nodes[static_cast<std::size_t>(k)] = a + (k + 0.5) * d;
    for (int k = 0; k <= n; ++k) s_faces[static_cast<std::size_t>(k)] = a + k * d;
  } else {
    const double d = (b - a) / (n + 1);
    for (int k = 0; k < n; ++k) s_nodes[static_cast<std::size_t>(k)] = a + (k + 1) * d;
    for (int k = 0; k <= n; ++k) s_faces[static_cast<std::size_t>(k)] = a + (k + 0.5) * d;
  }
  Axis axis;
  axis.spec = spec;
  auto to_u = [&](double s) { return log ? std::exp(s) : s; };
  for (double s : s_nodes) axis.nodes.push_back(to_u(s));
  for (double s : s_faces) axis.faces.push_back(to_u(s));
  for (int k = 0; k < n; ++k) {
    axis.widths.push_back(axis.faces[static_cast<std::size_t>(k) + 1] - axis.faces[static_cast<std::size_t>(k)]);
  }
  return axis;
}

double Axis::gap(int k) const {
  const auto uk = static_cast<std::size_t>(k);
  if (k + 1 < size()) return nodes[uk + 1] - nodes[uk];
  // Periodic closure between the last and the first node.
  return nodes.front() + (spec.hi - spec.lo) - nodes.back();
}

double Axis::lower_gap() const { return nodes.front() - spec.lo; }
double Axis::upper_gap() const { return spec.hi - nodes.back(); }

Grid::Grid(std::vector<AxisSpec> specs) {
  if (specs.empty()) throw GridError("a grid needs at least one axis");
  for (auto& s : specs) axes_.push_back(make_axis(s));
  strides_.assign(axes_.size(), 1);
  size_ = 1;
  for (std::size_t d = axes_.size(); d-- > 0;) {
    strides_[d] = size_;
    size_ *= static_cast<std::size_t>(axes_[d].size());
  }
}

std::size_t Grid::flat(const std::vector<int>& index) const {
  std::size_t out = 0;
  for (std::size_t d = 0; d < axes_.size(); ++d) out += strides_[d] * static_cast<std::size_t>(index[d]);
  return out;
}

std::vector<int> Grid::unflat(std::size_t flat) const {
  std::vector<int> out(axes_.size());
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    out[d] = static_cast<int>(flat / strides_[d]);
    flat %= strides_[d];
  }
  return out;
}

std::vector<double> Grid::point(const std::vector<int>& index) const {
  std::vector<double> out(axes_.size());
  for (std::size_t d = 0; d < axes_.size(); ++d) out[d] = axes_[d].nodes[static_cast<std::size_t>(index[d])];
  return out;
}

std::vector<std::string> Grid::coordinates() const {
  std::vector<std::string> out;
  for (const auto& a : axes_) out.push_back(a.spec.coordinate);
  return out;
}

std::string Grid::describe() const {
  std::ostringstream out;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    const auto& s = axes_[d].spec;
    if (d) out << " x ";
    out << s.coordinate << "[" << s.lo << ", " << s.hi << "]:" << s.nodes
        << (s.spacing == Spacing::Logarithmic ? " log" : "") << " (" << edge_name(s.lower) << "/"
        << edge_name(s.upper) << ")";
  }
  return out.str();
}

}  // namespace gq::numeric
