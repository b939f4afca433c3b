__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'
__version__ = '0.1.0'
