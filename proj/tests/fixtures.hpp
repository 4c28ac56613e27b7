#pragma once

#include "wsy/pyramid.hpp"

// Shared test pyramids.
//
//  P1          gl_{1|2}: rows (1,+)(2,-), ell=2, sigma=[[0,1],[0,0]].
//  P1 mirror   same rows left-shifted: sigma=[[0,0],[1,0]] (Case L).
//  exp         the gl_{5|6} pyramid with rows (2,-)(2,+)(3,+)(4,-),
//              offsets (1,1,1,0), ell=4.
//  sigma_fig   the 6x6 shift matrix whose ell=8 pyramid has row lengths
//              (1,2,4,4,6,8) and labels (-,+,+,+,-,+) for 100010.
//  sigma2      [[0,1,1],[0,0,0],[1,1,0]], ell=3, 011: both E- and F-shifts.
//  gl22_rect   one-column rectangle on 0101 (so U(p) = U(gl_{2|2})).
//  serre       staircase on 0010: minimal shape (1,1,1,1), parity change
//              in the middle, instantiates the quartic Serre relations.
//  caseR_H2    [[0,1,1],[0,0,0],[0,0,0]], ell=2, 011: Case R with H = 2.
//  caseR_z3    [[0,1,2],[0,0,1],[0,0,0]], ell=3, 011: Case R with z = 3.

namespace fx {

inline wsy::Pyramid P1()
{
    return wsy::pyramid_from_triple(wsy::ShiftMatrix({{0, 1}, {0, 0}}), 2,
                                    wsy::ZeroOneSequence::parse("01"));
}

inline wsy::Pyramid P1_mirror()
{
    return wsy::pyramid_from_triple(wsy::ShiftMatrix({{0, 0}, {1, 0}}), 2,
                                    wsy::ZeroOneSequence::parse("01"));
}

inline wsy::Pyramid exp_pyramid()
{
    return wsy::Pyramid({{2, true, 1}, {2, false, 1}, {3, false, 1}, {4, true, 0}}, 4);
}

inline wsy::ShiftMatrix sigma_fig()
{
    return wsy::ShiftMatrix({{0, 1, 2, 2, 2, 3},
                             {0, 0, 1, 1, 1, 2},
                             {1, 1, 0, 0, 0, 1},
                             {1, 1, 0, 0, 0, 1},
                             {3, 3, 2, 2, 0, 1},
                             {4, 4, 3, 3, 1, 0}});
}

inline wsy::Pyramid sigma2_pyramid()
{
    return wsy::pyramid_from_triple(wsy::ShiftMatrix({{0, 1, 1}, {0, 0, 0}, {1, 1, 0}}), 3,
                                    wsy::ZeroOneSequence::parse("011"));
}

inline wsy::Pyramid gl22_rect()
{
    return wsy::Pyramid({{1, false, 0}, {1, true, 0}, {1, false, 0}, {1, true, 0}}, 1);
}

inline wsy::Pyramid serre_pyramid()
{
    return wsy::pyramid_from_triple(
        wsy::ShiftMatrix({{0, 1, 2, 3}, {0, 0, 1, 2}, {0, 0, 0, 1}, {0, 0, 0, 0}}), 4,
        wsy::ZeroOneSequence::parse("0010"));
}

inline wsy::Pyramid caseR_H2()
{
    return wsy::pyramid_from_triple(wsy::ShiftMatrix({{0, 1, 1}, {0, 0, 0}, {0, 0, 0}}), 2,
                                    wsy::ZeroOneSequence::parse("011"));
}

inline wsy::Pyramid caseR_z3()
{
    return wsy::pyramid_from_triple(wsy::ShiftMatrix({{0, 1, 2}, {0, 0, 1}, {0, 0, 0}}), 3,
                                    wsy::ZeroOneSequence::parse("011"));
}

inline wsy::Pyramid caseL_H2()
{
    return wsy::pyramid_from_triple(wsy::ShiftMatrix({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}), 2,
                                    wsy::ZeroOneSequence::parse("011"));
}

} // namespace fx
