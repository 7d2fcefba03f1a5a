"""Test :mod:`~stirlab._valid_install`.

"""
from stirlab import validate_installation


def test_validate_installation(capsys):
    assert validate_installation() is True
    assert capsys.readouterr().out.strip() \
        == "Installation of Stirlab has been validated."
