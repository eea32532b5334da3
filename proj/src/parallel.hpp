#ifndef QTLATTICE_SRC_PARALLEL_HPP
#define QTLATTICE_SRC_PARALLEL_HPP

#include <cstddef>
#include <exception>

#include "qtlattice/common.hpp"

namespace qtl::detail
{
// Runs body(i) for i in [0, count). Each index writes only its own output slot,
// so the serial and OpenMP paths produce identical results. The first
// exception thrown by any index is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t count, Execution exec, Body&& body)
{
    if (exec == Execution::serial)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::exception_ptr failure;
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i)
    {
        try
        {
            body(static_cast<std::size_t>(i));
        }
        catch (...)
        {
#pragma omp critical(qtl_for_each_index)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace qtl::detail

#endif // QTLATTICE_SRC_PARALLEL_HPP
