#pragma once

#include <memory>
#include <type_traits>
#include <utility>

namespace taskwell::detail {

// Move-only type-erased nullary callable. std::function requires copyable
// targets, which rules out capturing promises and move-only arguments.
class UniqueTask
{
public:
    UniqueTask() = default;

    template <typename F>
        requires(!std::is_same_v<std::decay_t<F>, UniqueTask> && std::is_invocable_v<std::decay_t<F>&>)
    explicit UniqueTask(F&& f) : impl_(std::make_unique<Model<std::decay_t<F>>>(std::forward<F>(f)))
    {
    }

    UniqueTask(UniqueTask&&) noexcept = default;
    UniqueTask& operator=(UniqueTask&&) noexcept = default;
    UniqueTask(const UniqueTask&) = delete;
    UniqueTask& operator=(const UniqueTask&) = delete;

    explicit operator bool() const noexcept { return impl_ != nullptr; }

    void operator()() { impl_->invoke(); }

private:
    struct Concept
    {
        virtual ~Concept() = default;
        virtual void invoke() = 0;
    };

    template <typename F>
    struct Model final : Concept
    {
        template <typename G>
        explicit Model(G&& g) : fn(std::forward<G>(g))
        {
        }
        void invoke() override { fn(); }
        F fn;
    };

    std::unique_ptr<Concept> impl_;
};

} // namespace taskwell::detail
