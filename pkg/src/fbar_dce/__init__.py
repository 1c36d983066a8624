"""Frequency-domain simulator of microwave photon generation from vacuum by a
voltage-driven piezoelectric film resonator terminating a superconducting cavity.

Modules
-------
piezo     piezoelectric drive response: displacement, motional amplitude, capacitance modulation
mbvd      modified Butterworth-Van Dyke equivalent circuit of the film resonator
scatter   single-mirror scattering: time-varying capacitance, source term, bare coefficients
cavity    cavity dressing: input-output transfer, reflection, mode response, resonances
flux      output photon spectral density, decompositions, and scaling laws
squeeze   parametric (squeezing-Hamiltonian) picture with a truncated number-basis evolution
scenario  parameter presets, JSON scenario loading and validation
cli       command-line front end producing deterministic CSV tables
"""

__version__ = "0.1.0"
