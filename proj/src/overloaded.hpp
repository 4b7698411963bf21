#ifndef CVREP_OVERLOADED_HPP
#define CVREP_OVERLOADED_HPP

namespace cvrep {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace cvrep

#endif
