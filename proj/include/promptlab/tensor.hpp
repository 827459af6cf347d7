#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace promptlab {

// Dense row-major tensor of 64-bit floats with an optional gradient buffer.
// Copying a Tensor copies the handle; storage is shared.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> shape, bool requires_grad = false);

    static Tensor zeros(std::vector<std::size_t> shape, bool requires_grad = false);
    static Tensor full(std::vector<std::size_t> shape, double value, bool requires_grad = false);
    static Tensor from_values(std::vector<std::size_t> shape, std::vector<double> values,
                              bool requires_grad = false);
    static Tensor scalar(double value, bool requires_grad = false);

    bool defined() const { return s_ != nullptr; }
    const std::vector<std::size_t>& shape() const;
    std::size_t ndim() const;
    std::size_t numel() const;
    // rows()/cols() treat 1-d tensors as a single row
    std::size_t rows() const;
    std::size_t cols() const;

    double* data();
    const double* data() const;
    double at(std::size_t i) const;
    // value of a one-element tensor
    double item() const;

    bool requires_grad() const;
    void set_requires_grad(bool rg);
    // allocates (zeroed) grad storage if absent
    void ensure_grad();
    void zero_grad();
    bool has_grad() const;
    double* grad();
    const double* grad() const;

    bool same_storage(const Tensor& other) const { return s_ == other.s_; }
    // deep copy of values (grad not copied)
    Tensor clone() const;
    std::string shape_str() const;

private:
    struct Storage {
        std::vector<std::size_t> shape;
        std::vector<double> values;
        std::vector<double> grad;  // empty until ensure_grad
        bool requires_grad = false;
    };
    std::shared_ptr<Storage> s_;

    Storage& st();
    const Storage& st() const;
};

std::string shape_to_string(const std::vector<std::size_t>& shape);

// Records one backward closure per forward op, replayed in reverse by
// backward(). Single-threaded; distinct tapes are independent.
class Tape {
public:
    void record(std::function<void()> step) { steps_.push_back(std::move(step)); }

    // Seeds d(loss)/d(loss) = 1 and replays all recorded steps in reverse.
    // Gradients accumulate additively into each tensor's grad buffer; the
    // caller zeroes parameter grads between optimization steps.
    void backward(Tensor& loss);

    void clear() { steps_.clear(); }
    std::size_t size() const { return steps_.size(); }

private:
    std::vector<std::function<void()>> steps_;
};

struct NamedTensor {
    std::string name;
    Tensor tensor;
};

}  // namespace promptlab
