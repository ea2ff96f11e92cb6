"""Services package: one module per simulation concern.

Modules are imported directly (``from diracwalk.services import spectral_service``);
the numerical back-ends in ``diracwalk.adapters`` depend on ``interfaces`` here.
"""
