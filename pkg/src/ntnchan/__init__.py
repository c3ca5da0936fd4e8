"""NTN channel model library: spherical-Earth geometry, path loss and
scintillation terms, circular-aperture/UPA antennas, cluster-level fading,
and a CNR link budget with calibration and SNR sweep runners."""

__version__ = "0.1.0"
