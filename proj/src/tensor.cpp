#include "promptlab/tensor.hpp"

#include <numeric>
#include <stdexcept>

namespace promptlab {

namespace {
std::size_t shape_numel(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
}
}  // namespace

std::string shape_to_string(const std::vector<std::size_t>& shape) {
    std::string out = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) out += "x";
        out += std::to_string(shape[i]);
    }
    out += "]";
    return out;
}

Tensor::Tensor(std::vector<std::size_t> shape, bool requires_grad) {
    s_ = std::make_shared<Storage>();
    s_->values.assign(shape_numel(shape), 0.0);
    s_->shape = std::move(shape);
    s_->requires_grad = requires_grad;
}

Tensor Tensor::zeros(std::vector<std::size_t> shape, bool requires_grad) {
    return Tensor(std::move(shape), requires_grad);
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value, bool requires_grad) {
    Tensor t(std::move(shape), requires_grad);
    for (auto& v : t.st().values) v = value;
    return t;
}

Tensor Tensor::from_values(std::vector<std::size_t> shape, std::vector<double> values,
                           bool requires_grad) {
    if (shape_numel(shape) != values.size())
        throw std::invalid_argument("Tensor::from_values: " + shape_to_string(shape) +
                                    " does not hold " + std::to_string(values.size()) +
                                    " values");
    Tensor t;
    t.s_ = std::make_shared<Storage>();
    t.s_->shape = std::move(shape);
    t.s_->values = std::move(values);
    t.s_->requires_grad = requires_grad;
    return t;
}

Tensor Tensor::scalar(double value, bool requires_grad) {
    return from_values({1}, {value}, requires_grad);
}

Tensor::Storage& Tensor::st() {
    if (!s_) throw std::logic_error("Tensor: undefined handle");
    return *s_;
}

const Tensor::Storage& Tensor::st() const {
    if (!s_) throw std::logic_error("Tensor: undefined handle");
    return *s_;
}

const std::vector<std::size_t>& Tensor::shape() const { return st().shape; }
std::size_t Tensor::ndim() const { return st().shape.size(); }
std::size_t Tensor::numel() const { return st().values.size(); }

std::size_t Tensor::rows() const {
    const auto& sh = st().shape;
    return sh.size() >= 2 ? sh[0] : 1;
}

std::size_t Tensor::cols() const {
    const auto& sh = st().shape;
    if (sh.empty()) return 1;
    return sh.size() >= 2 ? sh[1] : sh[0];
}

double* Tensor::data() { return st().values.data(); }
const double* Tensor::data() const { return st().values.data(); }

double Tensor::at(std::size_t i) const {
    if (i >= numel()) throw std::out_of_range("Tensor::at: index out of range");
    return st().values[i];
}

double Tensor::item() const {
    if (numel() != 1)
        throw std::invalid_argument("Tensor::item: tensor " + shape_str() + " is not scalar");
    return st().values[0];
}

bool Tensor::requires_grad() const { return st().requires_grad; }
void Tensor::set_requires_grad(bool rg) { st().requires_grad = rg; }

void Tensor::ensure_grad() {
    auto& s = st();
    if (s.grad.size() != s.values.size()) s.grad.assign(s.values.size(), 0.0);
}

void Tensor::zero_grad() {
    auto& s = st();
    s.grad.assign(s.values.size(), 0.0);
}

bool Tensor::has_grad() const { return st().grad.size() == st().values.size(); }

double* Tensor::grad() {
    auto& s = st();
    return s.grad.size() == s.values.size() ? s.grad.data() : nullptr;
}

const double* Tensor::grad() const {
    const auto& s = st();
    return s.grad.size() == s.values.size() ? s.grad.data() : nullptr;
}

Tensor Tensor::clone() const {
    const auto& s = st();
    return from_values(s.shape, s.values, s.requires_grad);
}

std::string Tensor::shape_str() const { return shape_to_string(st().shape); }

void Tape::backward(Tensor& loss) {
    if (!loss.defined() || loss.numel() != 1)
        throw std::invalid_argument("Tape::backward: loss must be scalar, got " +
                                    (loss.defined() ? loss.shape_str() : std::string("undefined")));
    loss.ensure_grad();
    loss.grad()[0] += 1.0;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) (*it)();
}

}  // namespace promptlab
